// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_ANALYSIS_HPP
#define LINDIST_ANALYSIS_HPP

#include <string>

#include "lindist/crossing.hpp"
#include "lindist/rank_one.hpp"
#include "lindist/singular_form.hpp"

namespace lindist {

// One-stop record of the full pipeline for a single matrix. When the
// spectrum is degenerate there is no rank-one improvement; the report says
// so in `reason` and the derived fields stay at their defaults.
struct AnalysisReport {
  bool improvable = false;
  std::string reason;
  double h_a = 1.0;
  SingularForm form;
  RankOneDir b0;        // normalized frame
  RankOneDir b0_world;  // transported into the input frame
  double d1 = 0.0;
  double d2 = 0.0;
  double t_minus = 0.0;
  double t_plus = 0.0;
  double t_minus_world = 0.0;  // scaled by form.scale
  double t_plus_world = 0.0;
  double h_minus = 0.0;
  double h_plus = 0.0;
  double ratio = 0.0;
  double angle_rad = 0.0;
  double fraction_plus = 0.0;
  double gap_identity = 0.0;
};

AnalysisReport analyze(const Mat3& a);

// Same pipeline starting from the normalized diagonal diag(1, alpha, beta);
// requires 1 <= alpha <= beta (nearly-equal values give the degenerate
// report, values below 1 are invalid).
AnalysisReport analyze_sing(double alpha, double beta);

// The geometric-progression family diag(1, c, c^2), c > 1: distortion c^2
// with a strictly smaller two-phase laminate next to it.
AnalysisReport geometric_example(double c);

}  // namespace lindist

#endif
