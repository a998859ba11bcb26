// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_RANK_ONE_HPP
#define LINDIST_RANK_ONE_HPP

#include <vector>

#include "lindist/mat3.hpp"
#include "lindist/singular_form.hpp"

namespace lindist {

// Rank-one line direction B = u (x) v with unit u, v.
struct RankOneDir {
  Vec3 u;
  Vec3 v;
  Mat3 matrix() const { return outer(u, v); }
};

// Taylor data of t -> H(A + tB) at t = 0, from eigenvalue perturbation
// theory, cross-checked by Richardson-extrapolated central differences.
struct DirectionalSeries {
  double h0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double fd_d1 = 0.0;
  double fd_d2 = 0.0;
  // Set when the two routes disagree beyond 1e-6 relative: the finite
  // differences have hit their roundoff floor for this input.
  bool conditioning_warning = false;
};

// (r, theta1) and (s, theta2) chart on pairs of unit vectors:
//   u = (sqrt(1-r^2), r cos t1, r sin t1), v = (sqrt(1-s^2), s cos t2, s sin t2)
struct SphericalParam {
  double r = 0.0;
  double s = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  RankOneDir direction() const;
};

// Requires simple extreme eigenvalues of A^T A (nonsmooth_point otherwise).
DirectionalSeries directional_series(const Mat3& a, const RankOneDir& b);

// The unique (up to sign) rank-one direction minimizing d2 subject to d1 = 0
// at diag(1, alpha, beta), in closed form. Requires 1 < alpha < beta.
RankOneDir optimal_direction(const SingularForm& f);

// d2 along the optimal direction: -2q with
//   q = (b-1)^3 b / (4(a+1)(b+1)(a+b)(a^2+a+b^2+(a-1)b+1)).
double closed_form_curvature(const SingularForm& f);

// Transport a normal-form direction pair into the frame of A = s Q D R:
// u rides on Q, v on R^T, so A + t uv^T = s Q (D + (t/s) u0 v0^T) R and the
// pencil keeps its singular values up to the scale factor.
RankOneDir world_direction(const SingularForm& f, const RankOneDir& d);

struct GridOracleResult {
  SphericalParam param;
  RankOneDir dir;
  DirectionalSeries series;
  long evaluations = 0;
};

// Brute-force sweep of the spherical chart: theta1, theta2 over [0, 2pi)
// (n_theta points each), radial coordinate over [0, 1] (n_rs points), with
// the complementary radial coordinate solved from the d1 = 0 constraint.
// Returns the feasible direction minimizing d2. Deterministic under any
// thread count (LINDIST_THREADS overrides the worker count).
GridOracleResult grid_oracle(const SingularForm& f, int n_theta, int n_rs);

// Figure data: n_theta x n_theta grid over [0, pi]^2 (inclusive endpoints),
// each cell holding the minimal feasible d2 over the radial grid (+inf when
// the constraint has no solution in the cell). Row-major in theta1.
std::vector<double> curvature_landscape(const SingularForm& f, int n_theta, int n_rs);

// Test hook: relative perturbation applied to closed_form_curvature, used to
// prove the verification suite can detect a corrupted coefficient. 0 = off.
void set_test_curvature_perturbation(double rel) noexcept;
double test_curvature_perturbation() noexcept;

}  // namespace lindist

#endif
