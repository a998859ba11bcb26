// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/singular_form.hpp"

#include <cmath>

#include "lindist/error.hpp"
#include "lindist/sym_eigen.hpp"

namespace lindist {

namespace {

// Modified Gram-Schmidt on the columns of m (in place).
void orthonormalize_columns(Mat3& m) {
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < j; ++k) {
      double d = 0.0;
      for (int i = 0; i < 3; ++i) d += m(i, k) * m(i, j);
      for (int i = 0; i < 3; ++i) m(i, j) -= d * m(i, k);
    }
    double n = 0.0;
    for (int i = 0; i < 3; ++i) n += m(i, j) * m(i, j);
    n = std::sqrt(n);
    for (int i = 0; i < 3; ++i) m(i, j) /= n;
  }
}

}  // namespace

SingularForm singular_form(const Mat3& a) {
  if (!mat3_finite(a)) throw error(errc::invalid_input, "singular_form: non-finite entries");
  SymEigen3 e = sym_eigen(gram(a));
  double l1 = e.values[0], l3 = e.values[2];
  if (l3 <= 0.0) throw error(errc::singular_matrix, "singular_form: zero matrix");
  if (!(l1 > 0.0) || std::sqrt(l1 / l3) <= 1e-12)
    throw error(errc::singular_matrix, "singular_form: rank-deficient input");

  SingularForm f;
  std::array<double, 3> sig{std::sqrt(e.values[0]), std::sqrt(e.values[1]), std::sqrt(e.values[2])};
  f.scale = sig[0];
  f.alpha = sig[1] / sig[0];
  f.beta = sig[2] / sig[0];

  Mat3 v;  // right singular vectors as columns
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) v(i, k) = e.vectors[static_cast<std::size_t>(k)][i];

  Mat3 u;  // left singular vectors: A v_k / sigma_k
  for (int k = 0; k < 3; ++k) {
    Vec3 col = a * e.vectors[static_cast<std::size_t>(k)];
    for (int i = 0; i < 3; ++i) u(i, k) = col[i] / sig[static_cast<std::size_t>(k)];
  }
  orthonormalize_columns(u);

  f.q = u;
  f.r = transpose(v);

  Mat3 rec = reconstruct(f);
  double err = frobenius_norm(rec - a) / (frobenius_norm(a) + 1e-300);
  if (err > 1e-9) throw error(errc::inconsistent, "singular_form: reconstruction check failed");
  return f;
}

bool strictly_ordered(const SingularForm& f, double tol) noexcept {
  return f.alpha > 1.0 + tol && f.beta > f.alpha * (1.0 + tol);
}

Mat3 reconstruct(const SingularForm& f) {
  return f.q * mat3_diag(f.scale, f.scale * f.alpha, f.scale * f.beta) * f.r;
}

}  // namespace lindist
