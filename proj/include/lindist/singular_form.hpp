// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_SINGULAR_FORM_HPP
#define LINDIST_SINGULAR_FORM_HPP

#include "lindist/mat3.hpp"

namespace lindist {

// Normal form of an invertible A with positive singular values s1<=s2<=s3:
//   A = scale * Q * diag(1, alpha, beta) * R,  Q,R in O(3),
// where scale=s1, alpha=s2/s1, beta=s3/s1, so 1 <= alpha <= beta.
struct SingularForm {
  double scale = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  Mat3 q;  // left factor
  Mat3 r;  // right factor
};

// Full SVD route via the Gram matrix. Throws:
//   invalid_input        non-finite entries
//   singular_matrix      smallest singular value vanishes (rel. 1e-12)
SingularForm singular_form(const Mat3& a);

// Strictness probe: true when 1 < alpha < beta with relative separation
// above `tol` between consecutive singular values.
bool strictly_ordered(const SingularForm& f, double tol = 1e-9) noexcept;

Mat3 reconstruct(const SingularForm& f);

}  // namespace lindist

#endif
