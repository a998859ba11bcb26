// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_SYM_EIGEN_HPP
#define LINDIST_SYM_EIGEN_HPP

#include "lindist/mat3.hpp"

namespace lindist {

// Eigendecomposition of a symmetric 3x3 matrix.
// Eigenvalues ascending; vectors[k] is the unit eigenvector of values[k].
// Sign convention: the largest-magnitude component of each vector is positive.
struct SymEigen3 {
  std::array<double, 3> values{};
  std::array<Vec3, 3> vectors{};
};

// Trigonometric closed form (Cardano on the characteristic cubic, eigenvectors
// from cross products of rows). Fast path; loses the eigenbasis when two
// eigenvalues nearly coincide.
SymEigen3 sym_eigen_closed(const Mat3& s);

// Cyclic Jacobi rotations. Slower, robust for clustered spectra.
SymEigen3 sym_eigen_jacobi(const Mat3& s);

// Closed form with residual/orthonormality validation, falling back to Jacobi
// when the fast path degrades.
SymEigen3 sym_eigen(const Mat3& s);

}  // namespace lindist

#endif
