// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_LAMINATE_HPP
#define LINDIST_LAMINATE_HPP

#include <string>
#include <utility>
#include <vector>

#include "lindist/crossing.hpp"
#include "lindist/rank_one.hpp"
#include "lindist/singular_form.hpp"

namespace lindist {

// Piecewise-linear periodic profile: slope t_minus on the falling piece,
// t_plus on the rising piece, range [0, 1], a(0) = 0.
struct Sawtooth {
  double t_minus = 0.0;
  double t_plus = 0.0;
  double period = 0.0;  // 1/t_plus - 1/t_minus
};

Sawtooth make_sawtooth(double t_minus, double t_plus);
double sawtooth_eval(const Sawtooth& s, double r);
// Right-hand slope at the kink points, t_minus or t_plus elsewhere.
double sawtooth_slope(const Sawtooth& s, double r);

// f_j(x) = Ax + (1/j) a(j v.x) u. The phase runs along v (the interface
// normal) and the oscillation along u, so the gradient takes exactly the
// two values A + t_pm u v^T shared with the pencil analysis.
struct LaminateSpec {
  Mat3 a = mat3_identity();
  RankOneDir b0;
  double t_minus = 0.0;
  double t_plus = 0.0;
  int j = 1;
};

// Full pipeline from a matrix with three distinct singular values: normal
// form, optimal direction, crossing interval, directions transported back
// into the frame of a.
LaminateSpec make_laminate(const Mat3& a, int j);

Vec3 laminate_eval(const LaminateSpec& l, const Vec3& x);
Mat3 laminate_gradient(const LaminateSpec& l, const Vec3& x);

struct JumpReport {
  double h_a = 0.0;
  double h_laminate = 0.0;  // max of the two phase distortions
  double ratio = 0.0;       // h_a / h_laminate
  double fraction_plus = 0.0;
};

// Verifies h_laminate < h_a strictly (inconsistent error otherwise).
JumpReport laminate_distortion(const LaminateSpec& l);

// Angle between the oscillation direction and (0,0,1), via the closed
// expression in (alpha, beta); cross-checked against optimal_direction.
double lamination_angle(const SingularForm& f);

struct SweepCell {
  double alpha = 0.0;
  double beta = 0.0;
  double t_minus = 0.0;
  double t_plus = 0.0;
  double h_a = 0.0;
  double h_laminate = 0.0;
  double ratio = 0.0;
  double angle_rad = 0.0;
  double fraction_plus = 0.0;
  bool ok = false;
  std::string note;  // failure reason when not ok
};

// Evaluates one cell per (alpha, beta) pair; failures are recorded in the
// cell and the sweep continues. Cells certify: crossing roots straddle 0,
// phase distortions in [1, h_a), ratio in (1, sqrt(2) + 1e-9], positive
// determinant at both endpoints.
std::vector<SweepCell> jump_sweep_cells(const std::vector<std::pair<double, double>>& cells);

// Cross product of the two grids, skipping nothing: pairs violating
// 1 < alpha < beta <= 1e8 come back as failed cells.
std::vector<SweepCell> jump_sweep(const std::vector<double>& alpha_grid,
                                  const std::vector<double>& beta_grid);

// Largest ratio over the ok cells; inconsistent error when none succeeded
// or the bound sqrt(2) + 1e-9 is broken.
double sweep_max_ratio(const std::vector<SweepCell>& cells);

struct ConvergenceRow {
  int j = 0;
  double max_deviation = 0.0;  // sup over samples of |f_j(x) - Ax|
  double h_laminate = 0.0;
  double h_a = 0.0;
};

// Fixed-seed samples of the unit cube; deviation shrinks like 1/j while the
// gradient distortion stays constant and strictly below h_a.
std::vector<ConvergenceRow> convergence_study(const Mat3& a, const std::vector<int>& j_list,
                                              int samples = 10000);

}  // namespace lindist

#endif
