// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_JACOBI_HPP
#define LINDIST_JACOBI_HPP

#include <array>
#include <cmath>
#include <utility>

namespace lindist::detail {

// Cyclic Jacobi eigensolver on a symmetric 3x3, templated so high-precision
// instantiations stay available to offline tooling. Input a is overwritten;
// on return a's diagonal holds the eigenvalues and v's columns the vectors.
template <typename Real>
inline void jacobi_rotate(std::array<std::array<Real, 3>, 3>& a,
                          std::array<std::array<Real, 3>, 3>& v) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    Real off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off == Real(0)) return;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        Real apq = a[p][q];
        if (apq == Real(0)) continue;
        Real diff = a[q][q] - a[p][p];
        Real t;
        if (std::abs(apq) * Real(1e-38) >= std::abs(diff)) {
          t = Real(1);
        } else {
          Real theta = diff / (Real(2) * apq);
          t = Real(1) / (std::abs(theta) + std::sqrt(Real(1) + theta * theta));
          if (theta < Real(0)) t = -t;
        }
        Real c = Real(1) / std::sqrt(Real(1) + t * t);
        Real s = t * c;
        Real tau = s / (Real(1) + c);
        Real h = t * apq;
        a[p][p] -= h;
        a[q][q] += h;
        a[p][q] = Real(0);
        a[q][p] = Real(0);
        for (int k = 0; k < 3; ++k) {
          if (k != p && k != q) {
            Real akp = a[k][p];
            Real akq = a[k][q];
            a[k][p] = akp - s * (akq + tau * akp);
            a[k][q] = akq + s * (akp - tau * akq);
            a[p][k] = a[k][p];
            a[q][k] = a[k][q];
          }
          Real vkp = v[k][p];
          Real vkq = v[k][q];
          v[k][p] = vkp - s * (vkq + tau * vkp);
          v[k][q] = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
}

template <typename Real>
struct JacobiResult {
  std::array<Real, 3> values{};
  std::array<std::array<Real, 3>, 3> vectors{};  // vectors[k] is an eigenvector
};

template <typename Real>
inline JacobiResult<Real> jacobi_eigen(const std::array<std::array<Real, 3>, 3>& s) {
  auto a = s;
  std::array<std::array<Real, 3>, 3> v{};
  v[0][0] = v[1][1] = v[2][2] = Real(1);
  jacobi_rotate(a, v);
  JacobiResult<Real> out;
  std::array<int, 3> idx{0, 1, 2};
  std::array<Real, 3> d{a[0][0], a[1][1], a[2][2]};
  for (int i = 0; i < 2; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (d[idx[j]] < d[idx[i]]) std::swap(idx[i], idx[j]);
  for (int k = 0; k < 3; ++k) {
    out.values[static_cast<std::size_t>(k)] = d[idx[k]];
    for (int r = 0; r < 3; ++r)
      out.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = v[r][idx[k]];
  }
  return out;
}

}  // namespace lindist::detail

#endif
