// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/sym_eigen.hpp"

#include <algorithm>
#include <cmath>

#include "lindist/jacobi.hpp"

namespace lindist {

namespace {

void fix_sign(Vec3& v) {
  int k = 0;
  double best = std::abs(v[0]);
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      k = i;
    }
  if (v[k] < 0.0)
    for (int i = 0; i < 3; ++i) v[i] = -v[i];
}

Vec3 eigenvector_for(const Mat3& s, double lam) {
  Mat3 b = s;
  b(0, 0) -= lam;
  b(1, 1) -= lam;
  b(2, 2) -= lam;
  Vec3 r0 = vec3(b(0, 0), b(0, 1), b(0, 2));
  Vec3 r1 = vec3(b(1, 0), b(1, 1), b(1, 2));
  Vec3 r2 = vec3(b(2, 0), b(2, 1), b(2, 2));
  Vec3 c01 = cross(r0, r1);
  Vec3 c02 = cross(r0, r2);
  Vec3 c12 = cross(r1, r2);
  double n01 = dot(c01, c01), n02 = dot(c02, c02), n12 = dot(c12, c12);
  Vec3 best = c01;
  double bn = n01;
  if (n02 > bn) {
    best = c02;
    bn = n02;
  }
  if (n12 > bn) {
    best = c12;
    bn = n12;
  }
  if (bn == 0.0) return vec3(0.0, 0.0, 0.0);  // caller falls back
  return normalized(best);
}

}  // namespace

SymEigen3 sym_eigen_closed(const Mat3& s) {
  SymEigen3 out;
  double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
  if (p1 == 0.0) {
    std::array<std::pair<double, int>, 3> d{{{s(0, 0), 0}, {s(1, 1), 1}, {s(2, 2), 2}}};
    std::sort(d.begin(), d.end());
    for (int k = 0; k < 3; ++k) {
      out.values[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(k)].first;
      Vec3 e;
      e[d[static_cast<std::size_t>(k)].second] = 1.0;
      out.vectors[static_cast<std::size_t>(k)] = e;
    }
    return out;
  }
  double q = trace(s) / 3.0;
  double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
              (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * p1;
  double p = std::sqrt(p2 / 6.0);
  Mat3 b = (1.0 / p) * (s - mat3_diag(q, q, q));
  double r = 0.5 * det3(b);
  r = std::clamp(r, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double lmax = q + 2.0 * p * std::cos(phi);
  double lmin = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  double lmid = 3.0 * q - lmax - lmin;
  out.values = {lmin, lmid, lmax};
  for (int k = 0; k < 3; ++k) {
    Vec3 v = eigenvector_for(s, out.values[static_cast<std::size_t>(k)]);
    fix_sign(v);
    out.vectors[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

SymEigen3 sym_eigen_jacobi(const Mat3& s) {
  std::array<std::array<double, 3>, 3> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s(i, j);
  auto res = detail::jacobi_eigen<double>(a);
  SymEigen3 out;
  for (int k = 0; k < 3; ++k) {
    out.values[static_cast<std::size_t>(k)] = res.values[static_cast<std::size_t>(k)];
    Vec3 v = vec3(res.vectors[static_cast<std::size_t>(k)][0], res.vectors[static_cast<std::size_t>(k)][1],
                  res.vectors[static_cast<std::size_t>(k)][2]);
    fix_sign(v);
    out.vectors[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

namespace {

bool acceptable(const Mat3& s, const SymEigen3& e) {
  double scale = frobenius_norm(s) + 1.0;
  for (int k = 0; k < 3; ++k) {
    const Vec3& v = e.vectors[static_cast<std::size_t>(k)];
    double n = dot(v, v);
    if (std::abs(n - 1.0) > 1e-10) return false;
    Vec3 res = s * v - e.values[static_cast<std::size_t>(k)] * v;
    if (norm(res) > 1e-12 * scale) return false;
  }
  if (std::abs(dot(e.vectors[0], e.vectors[1])) > 1e-10) return false;
  if (std::abs(dot(e.vectors[0], e.vectors[2])) > 1e-10) return false;
  if (std::abs(dot(e.vectors[1], e.vectors[2])) > 1e-10) return false;
  return true;
}

}  // namespace

SymEigen3 sym_eigen(const Mat3& s) {
  SymEigen3 e = sym_eigen_closed(s);
  if (acceptable(s, e)) return e;
  return sym_eigen_jacobi(s);
}

}  // namespace lindist
