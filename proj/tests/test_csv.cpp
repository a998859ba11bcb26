#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "lindist/csv.hpp"
#include "lindist/error.hpp"

using namespace lindist;

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");

  for (double x : {3.9753929000877904, -2.0458436643111895, 1e-300, 6.02214076e23, M_PI}) {
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("branch table export") {
  std::vector<PencilBranches> rows(2);
  rows[0] = {0.0, 1.0, 4.0, 16.0};
  rows[1] = {0.5, 1.2, 3.0, 17.0};
  const std::string csv = branch_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) == "t,lam_min,lam_mid,lam_max,H");
  CHECK(csv.find("0,1,4,16,4\n") != std::string::npos);
  CHECK(csv.find("0.5,1.2,3,17,") != std::string::npos);
  // H column uses extremes regardless of label order
  std::vector<PencilBranches> swapped(1);
  swapped[0] = {2.0, 9.0, 1.0, 4.0};
  CHECK(branch_csv(swapped).find("2,9,1,4,3\n") != std::string::npos);
}

TEST_CASE("sweep export skips failed cells") {
  std::vector<SweepCell> cells(2);
  cells[0].alpha = 2;
  cells[0].beta = 4;
  cells[0].t_minus = -2.0;
  cells[0].t_plus = 1.0;
  cells[0].h_a = 4;
  cells[0].h_laminate = 3.9753929000877904;  // prints as ...03, the shortest form
  cells[0].ratio = 1.25;
  cells[0].angle_rad = 1.2;
  cells[0].fraction_plus = 0.6;
  cells[0].ok = true;
  cells[1].alpha = 2;
  cells[1].beta = 1.5;
  cells[1].ok = false;
  cells[1].note = "needs alpha < beta";
  const std::string csv = sweep_csv(cells);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "alpha,beta,t_minus,t_plus,h_A,h_laminate,ratio,angle_rad,fraction_plus");
  CHECK(csv.find("2,4,-2,1,4,3.9753929000877903,1.25,1.2,0.6\n") != std::string::npos);
  CHECK(csv.find("2,1.5") == std::string::npos);
}

TEST_CASE("landscape export") {
  std::vector<double> grid = {-0.02, std::numeric_limits<double>::infinity(), -0.01, -0.03};
  const std::string csv = landscape_csv(grid, 2);
  CHECK(csv.substr(0, csv.find('\n')) == "theta1,theta2,objective");
  CHECK(csv.find("0,0,-0.02\n") != std::string::npos);
  CHECK(csv.find(",inf\n") != std::string::npos);
  // 4 data rows + header
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') lines++;
  CHECK(lines == 5);
  CHECK_THROWS_AS((void)landscape_csv(grid, 3), const error&);
}

TEST_CASE("file round trip") {
  const std::string path = "csv_roundtrip_scratch.tmp";
  const std::string body = "a,b\n1,2\n";
  write_text_file(path, body);
  CHECK(read_text_file(path) == body);
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)read_text_file("does_not_exist_anywhere.csv"), const error&);
  CHECK_THROWS_AS((void)write_text_file("no_such_dir/x.csv", body), const error&);
}
