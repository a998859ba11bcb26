// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Regenerates the oracle tables under tests/golden. Every value column is
// produced by a route that does not share code with the closed forms the
// library ships: branch tables by the marching numeric eigensolver, crossing
// roots by scan-and-bisect, distortion by a long double eigensolver, and
// curvature by Richardson-extrapolated long double differences.
//
//   golden_gen [outdir]

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lindist/crossing.hpp"
#include "lindist/csv.hpp"
#include "lindist/mat3.hpp"
#include "lindist/rank_one.hpp"
#include "lindist/singular_form.hpp"
#include "lindist/sym_eigen.hpp"

namespace {

using lindist::Mat3;
using lindist::RankOneDir;
using lindist::SingularForm;
using lindist::Vec3;
using ld = long double;
using M3ld = std::array<std::array<ld, 3>, 3>;

SingularForm diag_form(double alpha, double beta) {
  SingularForm f;
  f.alpha = alpha;
  f.beta = beta;
  f.q = lindist::mat3_identity();
  f.r = lindist::mat3_identity();
  return f;
}

// ascending eigenvalues by cyclic Jacobi rotations. Backward stable, so the
// smallest eigenvalue keeps absolute accuracy eps * |M| even when the other
// two coincide, which happens exactly at the crossing parameters.
std::array<ld, 3> eig_sym_ld(M3ld m) {
  const ld scale = std::max({std::abs(m[0][0]), std::abs(m[1][1]), std::abs(m[2][2]),
                             std::abs(m[0][1]), std::abs(m[0][2]), std::abs(m[1][2]), 1e-300L});
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    const ld off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
    if (off <= 1e-40L * scale) break;
    for (const auto& pq : pairs) {
      const int p = pq[0], q = pq[1];
      if (m[p][q] == 0.0L) continue;
      const ld theta = (m[q][q] - m[p][p]) / (2.0L * m[p][q]);
      const ld t = (theta >= 0.0L ? 1.0L : -1.0L) / (std::abs(theta) + std::hypot(theta, 1.0L));
      const ld c = 1.0L / std::sqrt(t * t + 1.0L);
      const ld s = t * c;
      M3ld r;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = (i == j) ? 1.0L : 0.0L;
      r[p][p] = c;
      r[q][q] = c;
      r[p][q] = s;
      r[q][p] = -s;
      M3ld mr{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          ld acc = 0.0L;
          for (int k = 0; k < 3; ++k) acc += m[i][k] * r[k][j];
          mr[i][j] = acc;
        }
      M3ld next{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          ld acc = 0.0L;
          for (int k = 0; k < 3; ++k) acc += r[k][i] * mr[k][j];
          next[i][j] = acc;
        }
      next[p][q] = 0.0L;
      next[q][p] = 0.0L;
      m = next;
    }
  }
  std::array<ld, 3> ev = {m[0][0], m[1][1], m[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

ld distortion_ld(const Mat3& a, const Mat3& bm, ld t) {
  M3ld m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = static_cast<ld>(a(i, j)) + t * static_cast<ld>(bm(i, j));
  M3ld g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ld s = 0.0L;
      for (int k = 0; k < 3; ++k) s += m[k][i] * m[k][j];
      g[i][j] = s;
    }
  const auto ev = eig_sym_ld(g);
  if (!(ev[0] > 0.0L)) throw std::runtime_error("distortion_ld: gram not positive");
  return std::sqrt(ev[2] / ev[0]);
}

struct FdSeries {
  double d1;
  double d2;
};

// first and second t-derivatives of H(A + tB) at 0, Richardson over h, h/2
FdSeries fd_series(const Mat3& a, const Mat3& bm) {
  const ld h = 1e-4L;
  const ld f0 = distortion_ld(a, bm, 0.0L);
  const ld fp = distortion_ld(a, bm, h);
  const ld fm = distortion_ld(a, bm, -h);
  const ld fp2 = distortion_ld(a, bm, h / 2.0L);
  const ld fm2 = distortion_ld(a, bm, -h / 2.0L);
  const ld c_h = (fp - fm) / (2.0L * h);
  const ld c_h2 = (fp2 - fm2) / h;
  const ld d_h = (fp - 2.0L * f0 + fm) / (h * h);
  const ld d_h2 = (fp2 - 2.0L * f0 + fm2) / (h * h / 4.0L);
  return {static_cast<double>((4.0L * c_h2 - c_h) / 3.0L),
          static_cast<double>((4.0L * d_h2 - d_h) / 3.0L)};
}

double scan_root_near(const SingularForm& f, const RankOneDir& d, double center) {
  const double w = std::max(0.05, 1e-3 * std::abs(center));
  const auto roots = lindist::scan_crossings(f, d, center - w, center + w, 2001);
  if (roots.size() != 1)
    throw std::runtime_error("scan window holds " + std::to_string(roots.size()) + " crossings");
  return roots[0];
}

std::string branch_golden() {
  const SingularForm f = diag_form(2.0, 10.0);
  const auto rows = lindist::branch_table_by_marching(f, -10.0, 2.0, 161);
  std::string out = "t,lam_min,lam_mid,lam_max,H\n";
  const Mat3 a = lindist::reconstruct(f);
  for (const auto& r : rows) {
    const auto jac = lindist::sym_eigen_jacobi(lindist::gram(a + r.t * lindist::optimal_direction(f).matrix()));
    out += lindist::format_double(r.t) + ',' + lindist::format_double(r.lam_min) + ',' +
           lindist::format_double(r.lam_mid) + ',' + lindist::format_double(r.lam_max) + ',' +
           lindist::format_double(std::sqrt(jac.values[2] / jac.values[0])) + '\n';
  }
  return out;
}

std::string landscape_golden() {
  const int n_theta = 48, n_rs = 32;
  const double alpha = 2.0, beta = 4.0;
  const Mat3 a = lindist::reconstruct(diag_form(alpha, beta));
  std::string out = "theta1,theta2,objective\n";
  for (int i1 = 0; i1 < n_theta; ++i1) {
    const double th1 = M_PI * i1 / (n_theta - 1);
    for (int i2 = 0; i2 < n_theta; ++i2) {
      const double th2 = M_PI * i2 / (n_theta - 1);
      const double s1 = std::sin(th1), c1 = std::cos(th1);
      const double s2 = std::sin(th2), c2 = std::cos(th2);
      double cell = std::numeric_limits<double>::infinity();
      for (int side = 0; side < 2; ++side) {
        const double sin_own = side == 0 ? s1 : s2;
        const double sin_other = side == 0 ? s2 : s1;
        for (int ir = 0; ir < n_rs; ++ir) {
          const double rad = static_cast<double>(ir) / (n_rs - 1);
          // partner radial coordinate solving u3 v3 = beta u1 v1
          const double gamma = beta * std::sqrt(std::max(0.0, 1.0 - rad * rad));
          const double sigma = rad * sin_own * sin_other;
          double partner;
          if (gamma == 0.0)
            partner = 0.0;
          else if (sigma > 0.0)
            partner = gamma / std::hypot(sigma, gamma);
          else if (sigma == 0.0)
            partner = 1.0;
          else
            continue;  // sigma < 0: both constraint sides cannot vanish together
          const double ru = side == 0 ? rad : partner;
          const double rv = side == 0 ? partner : rad;
          const Vec3 u = lindist::vec3(std::sqrt(std::max(0.0, 1.0 - ru * ru)), ru * c1, ru * s1);
          const Vec3 v = lindist::vec3(std::sqrt(std::max(0.0, 1.0 - rv * rv)), rv * c2, rv * s2);
          const FdSeries fd = fd_series(a, lindist::outer(u, v));
          if (std::abs(fd.d1) > 1e-6) continue;
          cell = std::min(cell, fd.d2);
        }
      }
      out += lindist::format_double(th1) + ',' + lindist::format_double(th2) + ',' +
             lindist::format_double(cell) + '\n';
    }
  }
  return out;
}

std::string sweep_golden(const std::vector<std::pair<double, double>>& cells) {
  std::string out = "alpha,beta,t_minus,t_plus,h_A,h_laminate,ratio,angle_rad,fraction_plus\n";
  for (const auto& [alpha, beta] : cells) {
    if (!(alpha > 1.0 + 1e-9) || !(beta > alpha * (1.0 + 1e-9)) || beta > 1e8) continue;
    const SingularForm f = diag_form(alpha, beta);
    const RankOneDir d = lindist::optimal_direction(f);
    const lindist::CrossingInterval ci = lindist::crossing_interval(f);
    // windows centered on the closed-form roots; the values come from the scan
    const double tm = scan_root_near(f, d, ci.t_minus);
    const double tp = scan_root_near(f, d, ci.t_plus);
    const Mat3 a = lindist::reconstruct(f);
    const auto jac = lindist::sym_eigen_jacobi(lindist::gram(a));
    const double h_a = std::sqrt(jac.values[2] / jac.values[0]);
    const Mat3 bm = d.matrix();
    const double h_minus = static_cast<double>(distortion_ld(a, bm, tm));
    const double h_plus = static_cast<double>(distortion_ld(a, bm, tp));
    const double h_lam = std::max(h_minus, h_plus);
    const double cols[] = {alpha,
                           beta,
                           tm,
                           tp,
                           h_a,
                           h_lam,
                           h_a / h_lam,
                           std::acos(std::abs(d.u[2])),
                           -tm / (tp - tm)};
    for (int i = 0; i < 9; ++i) {
      out += lindist::format_double(cols[i]);
      out += i == 8 ? '\n' : ',';
    }
  }
  return out;
}

std::vector<std::pair<double, double>> strong_cells() {
  std::vector<std::pair<double, double>> cells;
  for (int k = 1; k <= 6; ++k) cells.emplace_back(2.0, std::pow(10.0, k));
  return cells;
}

std::vector<std::pair<double, double>> weak_cells() {
  const double ks[] = {0.001, 0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::pair<double, double>> cells;
  for (int e = 1; e <= 6; ++e) {
    const double base = std::pow(10.0, e);
    for (double k : ks) cells.emplace_back(k * base, base);
  }
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string outdir = argc > 1 ? argv[1] : "tests/golden";
  try {
    lindist::write_text_file(outdir + "/branches_sing_1_2_10.csv", branch_golden());
    std::printf("wrote %s/branches_sing_1_2_10.csv\n", outdir.c_str());
    lindist::write_text_file(outdir + "/curvature_landscape_sing_1_2_4.csv", landscape_golden());
    std::printf("wrote %s/curvature_landscape_sing_1_2_4.csv\n", outdir.c_str());
    lindist::write_text_file(outdir + "/jump_sweep_strong.csv", sweep_golden(strong_cells()));
    std::printf("wrote %s/jump_sweep_strong.csv\n", outdir.c_str());
    lindist::write_text_file(outdir + "/jump_sweep_weak.csv", sweep_golden(weak_cells()));
    std::printf("wrote %s/jump_sweep_weak.csv\n", outdir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "golden_gen: %s\n", e.what());
    return 1;
  }
  return 0;
}
