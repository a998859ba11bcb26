// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/distortion.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "lindist/error.hpp"
#include "lindist/sym_eigen.hpp"

namespace lindist {

double linear_distortion(const Mat3& a) {
  if (!mat3_finite(a)) throw error(errc::invalid_input, "linear_distortion: non-finite entries");
  SymEigen3 e = sym_eigen(gram(a));
  double l1 = e.values[0], l3 = e.values[2];
  if (!(l1 > 0.0) || l3 <= 0.0 || std::sqrt(l1 / l3) <= 1e-14)
    throw error(errc::singular_matrix, "linear_distortion: rank-deficient input");
  return std::sqrt(l3 / l1);
}

std::vector<Vec3> sphere_directions(int n) {
  // Fibonacci lattice
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(n));
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden_angle * i;
    dirs.push_back(vec3(rho * std::cos(phi), rho * std::sin(phi), z));
  }
  return dirs;
}

double sampled_distortion(const std::function<Vec3(const Vec3&)>& f, const Vec3& x,
                          std::span<const double> radii, int directions) {
  if (radii.empty()) throw error(errc::invalid_input, "sampled_distortion: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw error(errc::invalid_input, "sampled_distortion: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw error(errc::invalid_input, "sampled_distortion: radii must be descending");
  }
  if (directions < 8) throw error(errc::invalid_input, "sampled_distortion: too few directions");

  std::vector<Vec3> dirs = sphere_directions(directions);
  Vec3 fx = f(x);
  double result = std::numeric_limits<double>::quiet_NaN();
  for (double r : radii) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const Vec3& d : dirs) {
      Vec3 y = f(x + r * d) - fx;
      double n = norm(y);
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    if (!(lo > hi * 1e-12))
      throw error(errc::singular_matrix, "sampled_distortion: degenerate image");
    result = hi / lo;
  }
  return result;
}

EnergySpec EnergySpec::parse(std::string_view text) {
  EnergySpec s;
  if (text == "identity") {
    s.kind = Kind::identity;
    return s;
  }
  if (text == "exp") {
    s.kind = Kind::exponential;
    return s;
  }
  if (text.starts_with("power:")) {
    std::string_view num = text.substr(6);
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
    if (ec != std::errc{} || ptr != num.data() + num.size() || !(p >= 1.0))
      throw error(errc::invalid_input, "energy spec: power exponent must be a real >= 1");
    s.kind = Kind::power;
    s.p = p;
    return s;
  }
  throw error(errc::invalid_input, "energy spec: expected identity, power:p, or exp");
}

double EnergySpec::operator()(double h) const {
  switch (kind) {
    case Kind::identity: return h;
    case Kind::power: return std::pow(h, p);
    case Kind::exponential: return std::exp(h);
  }
  return h;
}

std::string EnergySpec::name() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::power: return "power:" + std::to_string(p);
    case Kind::exponential: return "exp";
  }
  return "identity";
}

bool convex_increasing(const EnergySpec& phi, double hi, int n) {
  double step = (hi - 1.0) / n;
  double prev = phi(1.0);
  for (int i = 1; i <= n; ++i) {
    double x = 1.0 + i * step;
    double y = phi(x);
    if (!(y >= prev)) return false;
    prev = y;
  }
  for (int i = 1; i < n; ++i) {
    double x = 1.0 + i * step;
    double mid2 = phi(x - step) + phi(x + step) - 2.0 * phi(x);
    if (mid2 < -1e-9 * (1.0 + std::abs(phi(x)))) return false;
  }
  return true;
}

double energy_of_two_phase(double h_plus, double h_minus, double fraction_plus,
                           const EnergySpec& phi) {
  if (!(h_plus >= 1.0) || !(h_minus >= 1.0))
    throw error(errc::invalid_input, "energy_of_two_phase: distortion values must be >= 1");
  if (!(fraction_plus >= 0.0) || !(fraction_plus <= 1.0))
    throw error(errc::invalid_input, "energy_of_two_phase: fraction outside [0,1]");
  return fraction_plus * phi(h_plus) + (1.0 - fraction_plus) * phi(h_minus);
}

// energy_gap lives in analysis.cpp: it needs the full pencil pipeline.

}  // namespace lindist
