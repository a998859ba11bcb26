// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_CSV_HPP
#define LINDIST_CSV_HPP

#include <string>
#include <vector>

#include "lindist/crossing.hpp"
#include "lindist/laminate.hpp"

namespace lindist {

// Shortest representation that round-trips through strtod; infinities print
// as "inf"/"-inf".
std::string format_double(double x);

// Header: t,lam_min,lam_mid,lam_max,H
std::string branch_csv(const std::vector<PencilBranches>& rows);

// Header: alpha,beta,t_minus,t_plus,h_A,h_laminate,ratio,angle_rad,fraction_plus
// Failed cells are skipped (their note is not representable in the schema).
std::string sweep_csv(const std::vector<SweepCell>& cells);

// Header: theta1,theta2,objective ; expects a row-major n x n grid over
// [0, pi]^2 inclusive.
std::string landscape_csv(const std::vector<double>& grid, int n_theta);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lindist

#endif
