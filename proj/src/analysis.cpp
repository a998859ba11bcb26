// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/analysis.hpp"

#include <cmath>

#include "lindist/distortion.hpp"
#include "lindist/error.hpp"
#include "lindist/laminate.hpp"

namespace lindist {

namespace {

AnalysisReport analyze_form(const SingularForm& f, const Mat3& world) {
  AnalysisReport rep;
  rep.form = f;
  rep.h_a = linear_distortion(world);
  if (!strictly_ordered(f)) {
    rep.reason = f.beta <= 1.0 + 1e-9 ? "conformal spectrum: no rank-one improvement"
                                      : "repeated singular values: no rank-one improvement";
    return rep;
  }

  rep.b0 = optimal_direction(f);
  rep.b0_world = world_direction(f, rep.b0);
  const DirectionalSeries series =
      directional_series(mat3_diag(1.0, f.alpha, f.beta), rep.b0);
  rep.d1 = series.d1;
  rep.d2 = series.d2;

  const CrossingInterval ci = crossing_interval(f);
  rep.t_minus = ci.t_minus;
  rep.t_plus = ci.t_plus;
  rep.t_minus_world = f.scale * ci.t_minus;
  rep.t_plus_world = f.scale * ci.t_plus;
  rep.h_minus = ci.h_minus;
  rep.h_plus = ci.h_plus;
  rep.ratio = rep.h_a / std::max(ci.h_minus, ci.h_plus);
  rep.angle_rad = lamination_angle(f);
  rep.fraction_plus = -ci.t_minus / (ci.t_plus - ci.t_minus);

  const EnergySpec identity = EnergySpec::parse("identity");
  rep.gap_identity = identity(rep.h_a) - energy_of_two_phase(ci.h_plus, ci.h_minus,
                                                             rep.fraction_plus, identity);
  if (!(rep.gap_identity > 0.0))
    throw error(errc::inconsistent, "analyze: laminate energy failed to undercut the linear map");
  rep.improvable = true;
  return rep;
}

}  // namespace

AnalysisReport analyze(const Mat3& a) { return analyze_form(singular_form(a), a); }

AnalysisReport analyze_sing(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 1.0 || beta < alpha)
    throw error(errc::invalid_input, "analyze_sing: need 1 <= alpha <= beta");
  SingularForm f;
  f.scale = 1.0;
  f.alpha = alpha;
  f.beta = beta;
  f.q = mat3_identity();
  f.r = mat3_identity();
  return analyze_form(f, mat3_diag(1.0, alpha, beta));
}

AnalysisReport geometric_example(double c) {
  if (!std::isfinite(c) || !(c > 1.0))
    throw error(errc::invalid_input, "geometric_example: need c > 1");
  AnalysisReport rep = analyze_sing(c, c * c);
  if (std::abs(rep.h_a - c * c) > 1e-12 * c * c)
    throw error(errc::inconsistent, "geometric_example: distortion should equal c^2");
  return rep;
}

double energy_gap(const Mat3& a, const EnergySpec& phi) {
  const SingularForm f = singular_form(a);
  if (!strictly_ordered(f))
    throw error(errc::degenerate_spectrum, "energy_gap: needs three distinct singular values");
  const CrossingInterval ci = crossing_interval(f);
  const double h_a = linear_distortion(a);
  const double fraction_plus = -ci.t_minus / (ci.t_plus - ci.t_minus);
  const double gap = phi(h_a) - energy_of_two_phase(ci.h_plus, ci.h_minus, fraction_plus, phi);
  if (!(gap > 0.0)) throw error(errc::inconsistent, "energy_gap: gap failed to be positive");
  return gap;
}

}  // namespace lindist
