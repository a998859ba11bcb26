// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lindist/error.hpp"

namespace lindist {

std::string format_double(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc())
    throw error(errc::io_error, "format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string branch_csv(const std::vector<PencilBranches>& rows) {
  std::string out = "t,lam_min,lam_mid,lam_max,H\n";
  for (const PencilBranches& r : rows) {
    const double hi = std::max({r.lam_min, r.lam_mid, r.lam_max});
    const double lo = std::min({r.lam_min, r.lam_mid, r.lam_max});
    out += format_double(r.t);
    out += ',';
    out += format_double(r.lam_min);
    out += ',';
    out += format_double(r.lam_mid);
    out += ',';
    out += format_double(r.lam_max);
    out += ',';
    out += format_double(std::sqrt(hi / lo));
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "alpha,beta,t_minus,t_plus,h_A,h_laminate,ratio,angle_rad,fraction_plus\n";
  for (const SweepCell& c : cells) {
    if (!c.ok) continue;
    const double cols[] = {c.alpha,   c.beta,  c.t_minus,   c.t_plus,       c.h_a,
                           c.h_laminate, c.ratio, c.angle_rad, c.fraction_plus};
    for (int i = 0; i < 9; ++i) {
      out += format_double(cols[i]);
      out += i == 8 ? '\n' : ',';
    }
  }
  return out;
}

std::string landscape_csv(const std::vector<double>& grid, int n_theta) {
  if (n_theta < 2 || grid.size() != static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_theta))
    throw error(errc::invalid_input, "landscape_csv: grid size does not match n_theta^2");
  std::string out = "theta1,theta2,objective\n";
  for (int i = 0; i < n_theta; ++i) {
    const double th1 = std::numbers::pi * i / (n_theta - 1);
    for (int j = 0; j < n_theta; ++j) {
      const double th2 = std::numbers::pi * j / (n_theta - 1);
      out += format_double(th1);
      out += ',';
      out += format_double(th2);
      out += ',';
      out += format_double(grid[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_theta) +
                                static_cast<std::size_t>(j)]);
      out += '\n';
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io_error, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw error(errc::io_error, "read failed: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error(errc::io_error, "cannot open for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out.good()) throw error(errc::io_error, "write failed: " + path);
}

}  // namespace lindist
