// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_CROSSING_HPP
#define LINDIST_CROSSING_HPP

#include <array>
#include <string>
#include <vector>

#include "lindist/rank_one.hpp"
#include "lindist/singular_form.hpp"

namespace lindist {

// Eigenvalues of (A + tB0)^T (A + tB0) with labels continuous in t: inside
// the crossing interval the labels agree with sorted order; beyond a crossing
// the branches keep their identity and the sorted order swaps instead.
struct PencilBranches {
  double t = 0.0;
  double lam_min = 0.0;
  double lam_mid = 0.0;
  double lam_max = 0.0;
};

struct CrossingInterval {
  double t_minus = 0.0;  // negative root
  double t_plus = 0.0;   // positive root
  double h_minus = 0.0;  // H(A + t_minus B0)
  double h_plus = 0.0;   // H(A + t_plus B0)
};

struct ConcavityReport {
  bool ok = false;
  double max_second_difference = 0.0;  // divided second differences, signed
  double worst_t = 0.0;
  double h_center = 0.0;
  double h_left = 0.0;
  double h_right = 0.0;
  std::string failure;  // empty when ok
};

// Coefficients of det[(A+tB0)^T(A+tB0) - lam^2 Id] as a polynomial in t;
// the degree really is 2 and out[k] multiplies t^k. The coefficients are
// verified internally against direct determinant evaluation at five t
// values (inconsistent error if the residual exceeds 1e-9 relative).
std::array<double, 3> pencil_charpoly(const SingularForm& f, const RankOneDir& b0, double lam);

// Pencil parameter at which the signed eigenvalue-root lam occurs; the
// numerator carries the factors (lam-1)(lam+alpha)(lam-beta), so lam in
// {1, -alpha, beta} maps to t = 0. Negative lam selects the middle branch.
// Pole error when the denominator vanishes.
double t_of_lambda(const SingularForm& f, double lam);

// Closed-form branch evaluation: signed roots of the characteristic cubic,
// sorted (the signed roots never collide), then squared.
PencilBranches branch_eigenvalues(const SingularForm& f, double t);

// Uniform table over [t_lo, t_hi], n rows, closed-form route.
std::vector<PencilBranches> branch_table(const SingularForm& f, double t_lo, double t_hi, int n);

// Independent route: numeric eigensolver at each grid point with branch
// identity maintained by marching from t = 0 and matching against linear
// extrapolation. Used by the verification suite against branch_table.
std::vector<PencilBranches> branch_table_by_marching(const SingularForm& f, double t_lo,
                                                     double t_hi, int n);

// Roots of the crossing quadratic, with branch-coincidence certification.
CrossingInterval crossing_interval(const SingularForm& f);

// Samples H(A + tB0) on [lo, hi]: certifies bounded-from-above second
// differences (<= 1e-8), interior maximum at t = 0, endpoints strictly
// below H(A). Failing inputs yield ok = false with the offending t.
ConcavityReport concavity_certificate(const SingularForm& f, const RankOneDir& b0, double lo,
                                      double hi, int n = 1000);

// Scan-and-bisect oracle: dense sorted-gap scan over [t_lo, t_hi] with
// n points, dips refined by ternary search. Independent of the closed-form
// quadratic and branch formulas.
std::vector<double> scan_crossings(const SingularForm& f, const RankOneDir& b0, double t_lo,
                                   double t_hi, int n);

}  // namespace lindist

#endif
