// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Links only the C surface, like any other client.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lindist.h"

namespace {

using ordered_json = nlohmann::ordered_json;

// 0 ok, 2 usage, 3 math domain, 4 io
int exit_code_for(int rc) {
  switch (rc) {
    case LINDIST_OK:
      return 0;
    case LINDIST_E_INVALID_INPUT:
      return 2;
    case LINDIST_E_IO:
      return 4;
    case LINDIST_E_UNKNOWN:
      return 1;
    default:
      return 3;
  }
}

int die(int rc) {
  std::fprintf(stderr, "error: %s\n", lindist_last_error());
  return exit_code_for(rc);
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 2;
}

std::string fmt(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ordered_json vec3_json(const double v[3]) { return ordered_json::array({v[0], v[1], v[2]}); }

int write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open for writing: %s\n", path.c_str());
    return 4;
  }
  out << body;
  out.flush();
  if (!out.good()) {
    std::fprintf(stderr, "error: write failed: %s\n", path.c_str());
    return 4;
  }
  return 0;
}

struct MatrixInput {
  std::vector<double> entries;  // nine positional reals
  std::vector<double> sing;     // --sing alpha beta
  std::string json_path;        // --matrix-json
};

void add_matrix_options(CLI::App* cmd, MatrixInput& in) {
  cmd->add_option("matrix", in.entries, "nine row-major matrix entries")->expected(9);
  cmd->add_option("--sing", in.sing, "alpha beta, shorthand for diag(1, alpha, beta)")->expected(2);
  cmd->add_option("--matrix-json", in.json_path,
                  "JSON file holding the matrix (flat [9] or nested [3][3], "
                  "optionally under a \"matrix\" key)");
}

// 0 on success, else the exit code (message already printed)
int resolve_matrix(const MatrixInput& in, double a[9]) {
  const int modes =
      (in.entries.size() == 9 ? 1 : 0) + (in.sing.size() == 2 ? 1 : 0) + (in.json_path.empty() ? 0 : 1);
  if (modes != 1)
    return usage_error("give the matrix exactly one way: nine entries, --sing, or --matrix-json");
  if (in.entries.size() == 9) {
    for (int i = 0; i < 9; ++i) a[i] = in.entries[static_cast<std::size_t>(i)];
    return 0;
  }
  if (in.sing.size() == 2) {
    for (int i = 0; i < 9; ++i) a[i] = 0.0;
    a[0] = 1.0;
    a[4] = in.sing[0];
    a[8] = in.sing[1];
    return 0;
  }
  std::ifstream f(in.json_path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot open for reading: %s\n", in.json_path.c_str());
    return 4;
  }
  ordered_json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    return usage_error(std::string("unparsable matrix file: ") + e.what());
  }
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  std::vector<double> flat;
  try {
    if (j.is_array() && j.size() == 9) {
      for (const auto& x : j) flat.push_back(x.get<double>());
    } else if (j.is_array() && j.size() == 3) {
      for (const auto& row : j) {
        if (!row.is_array() || row.size() != 3) throw std::runtime_error("rows must have 3 entries");
        for (const auto& x : row) flat.push_back(x.get<double>());
      }
    }
  } catch (const std::exception& e) {
    return usage_error(std::string("unparsable matrix file: ") + e.what());
  }
  if (flat.size() != 9) return usage_error("matrix file must hold 9 numbers (flat or 3x3)");
  for (int i = 0; i < 9; ++i) a[i] = flat[static_cast<std::size_t>(i)];
  return 0;
}

struct AnalyzeOpts {
  MatrixInput in;
  std::string branches_path;
  std::vector<double> t_range;
  int points = 201;
  std::string landscape_path;
  int landscape_n = 48;
  int landscape_inner = 32;
};

int run_analyze(const AnalyzeOpts& o) {
  lindist_report* rep = nullptr;
  int rc;
  if (o.in.sing.size() == 2 && o.in.entries.empty() && o.in.json_path.empty()) {
    rc = lindist_analyze_sing(o.in.sing[0], o.in.sing[1], &rep);
  } else {
    double a[9];
    if (int e = resolve_matrix(o.in, a)) return e;
    rc = lindist_analyze(a, &rep);
  }
  if (rc) return die(rc);

  lindist_report_view v;
  if ((rc = lindist_report_get(rep, &v))) {
    lindist_report_free(rep);
    return die(rc);
  }

  ordered_json out;
  out["improvable"] = v.improvable != 0;
  out["h"] = v.h_a;
  out["singular_form"] = ordered_json{{"scale", v.scale}, {"alpha", v.alpha}, {"beta", v.beta}};
  if (!v.improvable) {
    out["reason"] = lindist_report_reason(rep);
  } else {
    out["direction"] = ordered_json{{"u", vec3_json(v.u)},
                                    {"v", vec3_json(v.v)},
                                    {"u_world", vec3_json(v.u_world)},
                                    {"v_world", vec3_json(v.v_world)}};
    out["series"] = ordered_json{{"d1", v.d1}, {"d2", v.d2}};
    out["crossing"] = ordered_json{{"t_minus", v.t_minus},
                                   {"t_plus", v.t_plus},
                                   {"t_minus_world", v.t_minus_world},
                                   {"t_plus_world", v.t_plus_world},
                                   {"h_minus", v.h_minus},
                                   {"h_plus", v.h_plus}};
    out["laminate"] = ordered_json{
        {"ratio", v.ratio}, {"angle_rad", v.angle_rad}, {"fraction_plus", v.fraction_plus}};
    out["energy_gap_identity"] = v.gap_identity;
  }

  const bool wants_figures = !o.branches_path.empty() || !o.landscape_path.empty();
  if (wants_figures && !v.improvable) {
    lindist_report_free(rep);
    std::fprintf(stderr, "error: figure export needs three distinct singular values\n");
    return 3;
  }
  if (!o.branches_path.empty()) {
    double lo, hi;
    if (o.t_range.size() == 2) {
      lo = o.t_range[0];
      hi = o.t_range[1];
    } else {
      const double margin = 0.25 * (v.t_plus - v.t_minus);
      lo = v.t_minus - margin;
      hi = v.t_plus + margin;
    }
    char* csv = nullptr;
    if ((rc = lindist_branch_csv(v.alpha, v.beta, lo, hi, o.points, &csv))) {
      lindist_report_free(rep);
      return die(rc);
    }
    std::string body(csv);
    lindist_string_free(csv);
    if (int e = write_file(o.branches_path, body)) {
      lindist_report_free(rep);
      return e;
    }
  }
  if (!o.landscape_path.empty()) {
    char* csv = nullptr;
    if ((rc = lindist_landscape_csv(v.alpha, v.beta, o.landscape_n, o.landscape_inner, &csv))) {
      lindist_report_free(rep);
      return die(rc);
    }
    std::string body(csv);
    lindist_string_free(csv);
    if (int e = write_file(o.landscape_path, body)) {
      lindist_report_free(rep);
      return e;
    }
  }
  lindist_report_free(rep);
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

struct SweepOpts {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::string out_path;
};

int run_sweep(const SweepOpts& o) {
  if (o.alphas.empty() || o.betas.empty()) return usage_error("empty sweep grid");
  std::vector<double> ca, cb;
  ca.reserve(o.alphas.size() * o.betas.size());
  cb.reserve(ca.capacity());
  for (double a : o.alphas)
    for (double b : o.betas) {
      ca.push_back(a);
      cb.push_back(b);
    }

  lindist_sweep* s = nullptr;
  int rc = lindist_sweep_cells(ca.data(), cb.data(), ca.size(), &s);
  if (rc) return die(rc);

  char* csv = nullptr;
  if ((rc = lindist_sweep_csv(s, &csv))) {
    lindist_sweep_free(s);
    return die(rc);
  }
  std::string body(csv);
  lindist_string_free(csv);
  if (int e = write_file(o.out_path, body)) {
    lindist_sweep_free(s);
    return e;
  }

  double max_ratio = 0.0;
  if ((rc = lindist_sweep_max_ratio(s, &max_ratio))) {
    lindist_sweep_free(s);
    return die(rc);
  }
  double at_a = 0.0, at_b = 0.0;
  const std::size_t n = lindist_sweep_size(s);
  for (std::size_t i = 0; i < n; ++i) {
    lindist_sweep_row row;
    lindist_sweep_row_get(s, i, &row);
    if (!row.ok) {
      std::fprintf(stderr, "skipped alpha=%s beta=%s: %s\n", fmt(row.alpha).c_str(),
                   fmt(row.beta).c_str(), lindist_sweep_note(s, i));
      continue;
    }
    if (row.ratio == max_ratio && at_a == 0.0 && at_b == 0.0) {
      at_a = row.alpha;
      at_b = row.beta;
    }
  }
  lindist_sweep_free(s);
  std::printf("max ratio %s at alpha=%s beta=%s\n", fmt(max_ratio).c_str(), fmt(at_a).c_str(),
              fmt(at_b).c_str());
  return 0;
}

struct LaminateOpts {
  MatrixInput in;
  int j = 1;
  long samples = 100000;
  unsigned seed = 0;
  std::string out_path;
  double phase_tol = 1e-12;
};

int run_laminate(const LaminateOpts& o) {
  double a[9];
  if (int e = resolve_matrix(o.in, a)) return e;

  lindist_laminate* l = nullptr;
  int rc = lindist_laminate_create(a, o.j, &l);
  if (rc) return die(rc);
  lindist_laminate_info info;
  if ((rc = lindist_laminate_info_get(l, &info))) {
    lindist_laminate_free(l);
    return die(rc);
  }

  // the two admissible gradients, rebuilt exactly as the library forms them
  double phase[2][9];
  double amax = 1.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      phase[0][3 * r + c] = a[3 * r + c] + info.t_plus * (info.u[r] * info.v[c]);
      phase[1][3 * r + c] = a[3 * r + c] + info.t_minus * (info.u[r] * info.v[c]);
      amax = std::max({amax, std::abs(phase[0][3 * r + c]), std::abs(phase[1][3 * r + c])});
    }
  const double tol = o.phase_tol * amax;

  std::string csv;
  if (!o.out_path.empty()) csv = "x1,x2,x3,f1,f2,f3,deviation,phase\n";

  std::mt19937 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double max_dev = 0.0, sum_dev = 0.0;
  long count_plus = 0;
  for (long k = 0; k < o.samples; ++k) {
    const double x[3] = {unit(rng), unit(rng), unit(rng)};
    double fx[3], g[9];
    if ((rc = lindist_laminate_map(l, x, fx)) || (rc = lindist_laminate_gradient(l, x, g))) {
      lindist_laminate_free(l);
      return die(rc);
    }
    double dev2 = 0.0;
    for (int r = 0; r < 3; ++r) {
      const double lin = a[3 * r] * x[0] + a[3 * r + 1] * x[1] + a[3 * r + 2] * x[2];
      dev2 += (fx[r] - lin) * (fx[r] - lin);
    }
    const double dev = std::sqrt(dev2);
    max_dev = std::max(max_dev, dev);
    sum_dev += dev;

    double dist[2] = {0.0, 0.0};
    for (int p = 0; p < 2; ++p)
      for (int i = 0; i < 9; ++i) dist[p] = std::max(dist[p], std::abs(g[i] - phase[p][i]));
    const int which = dist[0] <= dist[1] ? 0 : 1;
    if (dist[which] > tol) {
      lindist_laminate_free(l);
      std::fprintf(stderr, "error: sampled gradient matches neither phase (off by %s)\n",
                   fmt(dist[which]).c_str());
      return 3;
    }
    if (which == 0) ++count_plus;
    if (!o.out_path.empty()) {
      for (int i = 0; i < 3; ++i) csv += fmt(x[i]) + ',';
      for (int i = 0; i < 3; ++i) csv += fmt(fx[i]) + ',';
      csv += fmt(dev) + ',' + (which == 0 ? "1" : "-1") + '\n';
    }
  }
  lindist_laminate_free(l);

  if (!o.out_path.empty())
    if (int e = write_file(o.out_path, csv)) return e;

  ordered_json out;
  out["j"] = o.j;
  out["samples"] = o.samples;
  out["seed"] = o.seed;
  out["h"] = info.h_a;
  out["h_laminate"] = info.h_laminate;
  out["ratio"] = info.ratio;
  out["t_minus"] = info.t_minus;
  out["t_plus"] = info.t_plus;
  out["max_deviation"] = max_dev;
  out["mean_deviation"] = sum_dev / static_cast<double>(o.samples);
  out["deviation_bound"] = 1.0 / o.j;
  out["fraction_plus_closed"] = info.fraction_plus;
  out["fraction_plus_sampled"] = static_cast<double>(count_plus) / static_cast<double>(o.samples);
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int run_verify() {
  lindist_verify* v = nullptr;
  int rc = lindist_verify_run(&v);
  if (rc) return die(rc);
  ordered_json out;
  out["all_pass"] = lindist_verify_all_pass(v) != 0;
  out["checks"] = ordered_json::array();
  ordered_json failures = ordered_json::array();
  const std::size_t n = lindist_verify_count(v);
  for (std::size_t i = 0; i < n; ++i) {
    const char *name = nullptr, *detail = nullptr;
    int pass = 0;
    lindist_verify_check_get(v, i, &name, &pass, &detail);
    out["checks"].push_back(
        ordered_json{{"name", name}, {"pass", pass != 0}, {"detail", detail}});
    if (!pass) failures.push_back(name);
  }
  out["failures"] = failures;
  const bool ok = lindist_verify_all_pass(v) != 0;
  lindist_verify_free(v);
  std::printf("%s\n", out.dump(2).c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-one analysis of linear distortion for 3x3 matrices"};
  app.require_subcommand(1);

  AnalyzeOpts an;
  CLI::App* c_an = app.add_subcommand("analyze", "analyze one matrix and print a JSON report");
  add_matrix_options(c_an, an.in);
  c_an->add_option("--branches", an.branches_path, "write the eigenvalue-branch table CSV here");
  c_an->add_option("--t-range", an.t_range, "branch table t interval (default: crossing interval widened by 25%)")
      ->expected(2);
  c_an->add_option("--points", an.points, "branch table rows")->check(CLI::Range(2, 100000000));
  c_an->add_option("--landscape", an.landscape_path, "write the direction-landscape CSV here");
  c_an->add_option("--landscape-n", an.landscape_n, "landscape grid resolution per angle")
      ->check(CLI::Range(2, 4096));
  c_an->add_option("--landscape-inner", an.landscape_inner, "landscape inner refinement resolution")
      ->check(CLI::Range(2, 4096));

  SweepOpts sw;
  CLI::App* c_sw = app.add_subcommand("sweep", "jump-ratio sweep over an (alpha, beta) grid");
  c_sw->add_option("--alphas", sw.alphas, "comma-separated alpha values")
      ->delimiter(',')
      ->required();
  c_sw->add_option("--betas", sw.betas, "comma-separated beta values")->delimiter(',')->required();
  c_sw->add_option("--out", sw.out_path, "CSV output path")->required();

  LaminateOpts la;
  CLI::App* c_la = app.add_subcommand("laminate", "sample the piecewise-affine approximation on the unit cube");
  add_matrix_options(c_la, la.in);
  c_la->add_option("--j", la.j, "oscillation frequency")->required()->check(CLI::Range(1, 100000000));
  c_la->add_option("--samples", la.samples, "number of cube samples")
      ->check(CLI::Range(static_cast<long>(1), static_cast<long>(100000000)));
  c_la->add_option("--seed", la.seed, "RNG seed");
  c_la->add_option("--out", la.out_path, "per-sample CSV output path");

  CLI::App* c_ve = app.add_subcommand("verify", "run the cross-checking suite and report failures");
  (void)c_ve;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (const char* profile = std::getenv("LINDIST_TOL_PROFILE")) {
    if (std::strcmp(profile, "strict") == 0)
      la.phase_tol = 1e-13;
    else if (std::strcmp(profile, "default") != 0 && profile[0] != '\0')
      return usage_error(std::string("unknown LINDIST_TOL_PROFILE: ") + profile);
  }
  if (const char* qp = std::getenv("LINDIST_TEST_QPERTURB")) {
    char* end = nullptr;
    const double rel = std::strtod(qp, &end);
    if (end == qp || *end != '\0') return usage_error("LINDIST_TEST_QPERTURB is not a number");
    lindist_test_set_curvature_perturbation(rel);
  }

  if (app.got_subcommand(c_an)) return run_analyze(an);
  if (app.got_subcommand(c_sw)) return run_sweep(sw);
  if (app.got_subcommand(c_la)) return run_laminate(la);
  return run_verify();
}
