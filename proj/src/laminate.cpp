// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/laminate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lindist/distortion.hpp"
#include "lindist/error.hpp"
#include "lindist/parallel.hpp"

namespace lindist {

namespace {

constexpr double kRatioCap = 1.4142135623730951 + 1e-9;

SingularForm diag_form(double alpha, double beta) {
  SingularForm f;
  f.scale = 1.0;
  f.alpha = alpha;
  f.beta = beta;
  f.q = mat3_identity();
  f.r = mat3_identity();
  return f;
}

double wrap_phase(const Sawtooth& s, double r) {
  const double lo = 1.0 / s.t_minus;
  double y = r - s.period * std::floor((r - lo) / s.period);
  if (y < lo) y = lo;
  if (y >= lo + s.period) y = lo;
  return y;
}

}  // namespace

Sawtooth make_sawtooth(double t_minus, double t_plus) {
  if (!std::isfinite(t_minus) || !std::isfinite(t_plus) || !(t_minus < 0.0) || !(t_plus > 0.0))
    throw error(errc::invalid_input, "make_sawtooth: need t_minus < 0 < t_plus");
  Sawtooth s;
  s.t_minus = t_minus;
  s.t_plus = t_plus;
  s.period = 1.0 / t_plus - 1.0 / t_minus;
  return s;
}

double sawtooth_eval(const Sawtooth& s, double r) {
  const double y = wrap_phase(s, r);
  const double a = y < 0.0 ? s.t_minus * y : s.t_plus * y;
  return std::clamp(a, 0.0, 1.0);
}

double sawtooth_slope(const Sawtooth& s, double r) {
  return wrap_phase(s, r) < 0.0 ? s.t_minus : s.t_plus;
}

LaminateSpec make_laminate(const Mat3& a, int j) {
  if (j < 1) throw error(errc::invalid_input, "make_laminate: j must be a positive integer");
  SingularForm f = singular_form(a);
  if (!strictly_ordered(f))
    throw error(errc::degenerate_spectrum, "make_laminate: needs three distinct singular values");
  CrossingInterval ci = crossing_interval(f);
  LaminateSpec l;
  l.a = a;
  l.b0 = world_direction(f, optimal_direction(f));
  l.t_minus = f.scale * ci.t_minus;
  l.t_plus = f.scale * ci.t_plus;
  l.j = j;
  return l;
}

Vec3 laminate_eval(const LaminateSpec& l, const Vec3& x) {
  const Sawtooth s = make_sawtooth(l.t_minus, l.t_plus);
  const double amp = sawtooth_eval(s, l.j * dot(l.b0.v, x)) / l.j;
  return l.a * x + amp * l.b0.u;
}

Mat3 laminate_gradient(const LaminateSpec& l, const Vec3& x) {
  const Sawtooth s = make_sawtooth(l.t_minus, l.t_plus);
  return l.a + sawtooth_slope(s, l.j * dot(l.b0.v, x)) * l.b0.matrix();
}

JumpReport laminate_distortion(const LaminateSpec& l) {
  const Mat3 b = l.b0.matrix();
  JumpReport r;
  r.h_a = linear_distortion(l.a);
  r.h_laminate = std::max(linear_distortion(l.a + l.t_minus * b),
                          linear_distortion(l.a + l.t_plus * b));
  if (!(r.h_laminate < r.h_a))
    throw error(errc::inconsistent, "laminate_distortion: phases do not drop the distortion");
  r.ratio = r.h_a / r.h_laminate;
  r.fraction_plus = -l.t_minus / (l.t_plus - l.t_minus);
  return r;
}

double lamination_angle(const SingularForm& f) {
  if (!(f.alpha > 1.0 + 1e-9) || !(f.beta > f.alpha * (1.0 + 1e-9)))
    throw error(errc::degenerate_spectrum, "lamination_angle: needs 1 < alpha < beta strictly");
  const double a = f.alpha, b = f.beta;
  const double s = a * a + a + b * b + (a - 1.0) * b + 1.0;
  const double c = (b - 1.0) * std::sqrt(b) / (std::sqrt(2.0) * std::sqrt((b + 1.0) * s));
  const double angle = std::acos(std::clamp(c, 0.0, 1.0));
  const RankOneDir d = optimal_direction(f);
  const double check = std::acos(std::clamp(std::abs(d.u[2]), 0.0, 1.0));
  if (std::abs(angle - check) > 1e-9)
    throw error(errc::inconsistent, "lamination_angle: direction disagrees with the closed expression");
  return angle;
}

std::vector<SweepCell> jump_sweep_cells(const std::vector<std::pair<double, double>>& cells) {
  if (cells.empty()) throw error(errc::invalid_input, "jump_sweep_cells: empty grid");
  std::vector<SweepCell> out(cells.size());
  detail::parallel_blocks(cells.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SweepCell& c = out[i];
      c.alpha = cells[i].first;
      c.beta = cells[i].second;
      try {
        if (!(c.alpha > 1.0) || !(c.beta <= 1e8) || !(c.alpha < c.beta))
          throw error(errc::invalid_input, "cell outside 1 < alpha < beta <= 1e8");
        const SingularForm f = diag_form(c.alpha, c.beta);
        const CrossingInterval ci = crossing_interval(f);
        c.t_minus = ci.t_minus;
        c.t_plus = ci.t_plus;
        const Mat3 a = mat3_diag(1.0, c.alpha, c.beta);
        c.h_a = linear_distortion(a);
        c.h_laminate = std::max(ci.h_minus, ci.h_plus);
        if (!(ci.h_minus >= 1.0) || !(ci.h_plus >= 1.0) || !(c.h_laminate < c.h_a))
          throw error(errc::inconsistent, "phase distortion outside [1, h_a)");
        c.ratio = c.h_a / c.h_laminate;
        if (!(c.ratio > 1.0) || !(c.ratio <= kRatioCap))
          throw error(errc::inconsistent, "jump ratio outside (1, sqrt(2)]");
        const Mat3 b = optimal_direction(f).matrix();
        if (!(det3(a + ci.t_minus * b) > 0.0) || !(det3(a + ci.t_plus * b) > 0.0))
          throw error(errc::inconsistent, "phase loses orientation");
        c.angle_rad = lamination_angle(f);
        c.fraction_plus = -ci.t_minus / (ci.t_plus - ci.t_minus);
        c.ok = true;
      } catch (const error& e) {
        c.note = e.what();
      }
    }
  });
  return out;
}

std::vector<SweepCell> jump_sweep(const std::vector<double>& alpha_grid,
                                  const std::vector<double>& beta_grid) {
  if (alpha_grid.empty() || beta_grid.empty())
    throw error(errc::invalid_input, "jump_sweep: empty grid");
  std::vector<std::pair<double, double>> cells;
  cells.reserve(alpha_grid.size() * beta_grid.size());
  for (double a : alpha_grid)
    for (double b : beta_grid) cells.push_back({a, b});
  return jump_sweep_cells(cells);
}

double sweep_max_ratio(const std::vector<SweepCell>& cells) {
  double best = 0.0;
  bool any = false;
  for (const SweepCell& c : cells) {
    if (!c.ok) continue;
    any = true;
    best = std::max(best, c.ratio);
  }
  if (!any) throw error(errc::inconsistent, "sweep_max_ratio: no successful cells");
  if (best > kRatioCap) throw error(errc::inconsistent, "sweep_max_ratio: ratio bound broken");
  return best;
}

std::vector<ConvergenceRow> convergence_study(const Mat3& a, const std::vector<int>& j_list,
                                              int samples) {
  if (j_list.empty() || samples < 100)
    throw error(errc::invalid_input, "convergence_study: need j values and >= 100 samples");
  for (std::size_t i = 0; i < j_list.size(); ++i) {
    if (j_list[i] < 1 || (i > 0 && j_list[i] <= j_list[i - 1]))
      throw error(errc::invalid_input, "convergence_study: j_list must ascend and stay positive");
  }

  std::mt19937 rng(0x1a2b3c4d);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> pts(static_cast<std::size_t>(samples));
  for (auto& p : pts) p = vec3(unit(rng), unit(rng), unit(rng));

  LaminateSpec l = make_laminate(a, 1);
  std::vector<ConvergenceRow> rows;
  rows.reserve(j_list.size());
  for (int j : j_list) {
    l.j = j;
    ConvergenceRow row;
    row.j = j;
    for (const Vec3& p : pts)
      row.max_deviation = std::max(row.max_deviation, norm(laminate_eval(l, p) - a * p));
    JumpReport rep = laminate_distortion(l);
    row.h_laminate = rep.h_laminate;
    row.h_a = rep.h_a;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lindist
