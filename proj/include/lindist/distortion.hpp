// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_DISTORTION_HPP
#define LINDIST_DISTORTION_HPP

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lindist/mat3.hpp"

namespace lindist {

// H(A): ratio of the largest to smallest singular value, >= 1.
// Throws singular_matrix for rank-deficient input.
double linear_distortion(const Mat3& a);

// Deterministic low-discrepancy unit-sphere sample set.
std::vector<Vec3> sphere_directions(int n);

// Pointwise distortion of an arbitrary map near x: for each radius r the
// ratio max/min of |f(x+h)-f(x)| over `directions` sphere samples with
// |h| = r. Returns the ratio at the smallest radius. Radii must be positive
// and descending. Degenerate images (min ~ 0) raise singular_matrix.
double sampled_distortion(const std::function<Vec3(const Vec3&)>& f, const Vec3& x,
                          std::span<const double> radii, int directions = 500);

// Named convex increasing weight applied to distortion values.
struct EnergySpec {
  enum class Kind { identity, power, exponential };
  Kind kind = Kind::identity;
  double p = 1.0;  // exponent for Kind::power, >= 1

  static EnergySpec parse(std::string_view text);
  double operator()(double h) const;
  std::string name() const;
};

// Finite-difference probe of convexity and monotonicity on [1, hi].
bool convex_increasing(const EnergySpec& phi, double hi = 32.0, int n = 256);

// Mean energy of a two-valued distortion field on the unit cube.
double energy_of_two_phase(double h_plus, double h_minus, double fraction_plus,
                           const EnergySpec& phi);

// Energy deficiency of the linear map against its optimal laminate:
//   phi(H(A)) - [fraction_plus phi(h_plus) + (1-fraction_plus) phi(h_minus)].
// Positive whenever A has three distinct singular values; such A are required
// (degenerate_spectrum otherwise).
double energy_gap(const Mat3& a, const EnergySpec& phi);

}  // namespace lindist

#endif
