// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_VERIFY_HPP
#define LINDIST_VERIFY_HPP

#include <string>
#include <vector>

namespace lindist {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

// Desk-scale oracle suite: dual eigensolver routes, perturbation series vs
// closed curvature (sensitive to the test perturbation hook), grid search
// vs the closed direction, scan-and-bisect vs closed crossings, marching vs
// closed branches, distortion invariances, laminate consistency.
VerifyReport run_verification();

}  // namespace lindist

#endif
