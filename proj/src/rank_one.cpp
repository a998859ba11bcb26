// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/rank_one.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "lindist/distortion.hpp"
#include "lindist/error.hpp"
#include "lindist/jacobi.hpp"
#include "lindist/parallel.hpp"
#include "lindist/sym_eigen.hpp"

namespace lindist {

namespace {

std::atomic<double> g_curvature_perturbation{0.0};

bool unit_vector(const Vec3& v) { return std::abs(dot(v, v) - 1.0) <= 1e-10; }

void require_strict(const SingularForm& f, const char* who) {
  if (!(f.alpha > 1.0 + 1e-9) || !(f.beta > f.alpha * (1.0 + 1e-9)))
    throw error(errc::degenerate_spectrum, std::string(who) + ": needs 1 < alpha < beta strictly");
}

// First and second t-derivatives of H(diag(1,a,b) + t u v^T) at 0, by
// eigenvalue perturbation of the Gram pencil in the trivial eigenbasis.
struct DiagSeries {
  double d1;
  double d2;
};

DiagSeries series_diag(double a, double b, const Vec3& u, const Vec3& v) noexcept {
  const double g1 = 1.0, g2 = a * a, g3 = b * b;
  const double w12 = u[0] * v[1] + a * u[1] * v[0];
  const double w13 = u[0] * v[2] + b * u[2] * v[0];
  const double w23 = a * u[1] * v[2] + b * u[2] * v[1];
  const double l1p = 2.0 * u[0] * v[0];
  const double l3p = 2.0 * b * u[2] * v[2];
  const double c1 = v[0] * v[0] + w12 * w12 / (g1 - g2) + w13 * w13 / (g1 - g3);
  const double c3 = v[2] * v[2] + w13 * w13 / (g3 - g1) + w23 * w23 / (g3 - g2);
  const double r1 = l1p / g1;
  const double r3 = l3p / g3;
  const double lp = 0.5 * (r3 - r1);
  const double lpp = 0.5 * ((2.0 * c3 / g3 - r3 * r3) - (2.0 * c1 / g1 - r1 * r1));
  return {b * lp, b * (lpp + lp * lp)};
}

// Radial coordinate of the partner vector solving the d1 = 0 constraint
//   u3 v3 = beta u1 v1
// given the other side's radial coordinate. Returns false when no solution
// exists on the chart.
bool solve_partner_radial(double beta, double rad, double sin_own, double sin_other,
                          double& partner) noexcept {
  const double gamma = beta * std::sqrt(std::max(0.0, 1.0 - rad * rad));
  const double sigma = rad * sin_own * sin_other;
  if (gamma == 0.0) {
    partner = 0.0;
    return true;
  }
  if (sigma > 0.0) {
    partner = gamma / std::hypot(sigma, gamma);
    return true;
  }
  if (sigma == 0.0) {
    partner = 1.0;
    return true;
  }
  return false;
}

Vec3 chart_vector(double rad, double c, double s) noexcept {
  return vec3(std::sqrt(std::max(0.0, 1.0 - rad * rad)), rad * c, rad * s);
}

// H(A + tB) in extended precision. The pinned difference steps 1e-4/1e-5
// put the second-difference cancellation below double roundoff, so the
// cross-check route evaluates H with the long double Jacobi solver.
long double distortion_extended(const Mat3& a, const Mat3& bm, double t) {
  long double m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = static_cast<long double>(a(i, j)) + static_cast<long double>(t) * static_cast<long double>(bm(i, j));
  std::array<std::array<long double, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long double s = 0.0L;
      for (int k = 0; k < 3; ++k) s += m[k][i] * m[k][j];
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  auto e = detail::jacobi_eigen<long double>(g);
  return std::sqrt(e.values[2] / e.values[0]);
}

}  // namespace

RankOneDir SphericalParam::direction() const {
  return RankOneDir{chart_vector(r, std::cos(theta1), std::sin(theta1)),
                    chart_vector(s, std::cos(theta2), std::sin(theta2))};
}

DirectionalSeries directional_series(const Mat3& a, const RankOneDir& b) {
  if (!mat3_finite(a) || !vec3_finite(b.u) || !vec3_finite(b.v))
    throw error(errc::invalid_input, "directional_series: non-finite input");
  if (!unit_vector(b.u) || !unit_vector(b.v))
    throw error(errc::invalid_input, "directional_series: u, v must be unit vectors");

  const Mat3 g0 = gram(a);
  const SymEigen3 e = sym_eigen(g0);
  const double g1 = e.values[0], g2 = e.values[1], g3 = e.values[2];
  if (!(g1 > 0.0)) throw error(errc::singular_matrix, "directional_series: rank-deficient matrix");
  const double gap_tol = 1e-13 * std::max(g3, 1.0);
  if (g2 - g1 <= gap_tol || g3 - g2 <= gap_tol)
    throw error(errc::nonsmooth_point, "directional_series: extreme eigenvalue not simple");

  const Mat3 bm = b.matrix();
  const Mat3 atb = transpose(a) * bm;
  const Mat3 gd1 = atb + transpose(atb);  // t coefficient of the Gram pencil
  const Mat3 gd2 = outer(b.v, b.v);       // t^2 coefficient, B^T B with |u| = 1

  double w[3][3];
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) w[k][m] = dot(e.vectors[k], gd1 * e.vectors[m]);

  auto second_coeff = [&](int k) {
    double c = dot(e.vectors[k], gd2 * e.vectors[k]);
    for (int m = 0; m < 3; ++m)
      if (m != k) c += w[k][m] * w[k][m] / (e.values[k] - e.values[m]);
    return c;
  };
  const double l1p = w[0][0], l3p = w[2][2];
  const double c1 = second_coeff(0), c3 = second_coeff(2);

  DirectionalSeries out;
  out.h0 = std::sqrt(g3 / g1);
  const double r1 = l1p / g1, r3 = l3p / g3;
  const double lp = 0.5 * (r3 - r1);
  const double lpp = 0.5 * ((2.0 * c3 / g3 - r3 * r3) - (2.0 * c1 / g1 - r1 * r1));
  out.d1 = out.h0 * lp;
  out.d2 = out.h0 * (lpp + lp * lp);

  // Independent route: Richardson-extrapolated central differences.
  const long double h1 = 1e-4L, h2 = 1e-5L;
  const long double f0 = distortion_extended(a, bm, 0.0);
  const long double p1 = distortion_extended(a, bm, 1e-4), m1 = distortion_extended(a, bm, -1e-4);
  const long double p2 = distortion_extended(a, bm, 1e-5), m2 = distortion_extended(a, bm, -1e-5);
  const long double d1a = (p1 - m1) / (2.0L * h1), d1b = (p2 - m2) / (2.0L * h2);
  const long double d2a = ((p1 + m1) - 2.0L * f0) / (h1 * h1);
  const long double d2b = ((p2 + m2) - 2.0L * f0) / (h2 * h2);
  out.fd_d1 = static_cast<double>((100.0L * d1b - d1a) / 99.0L);
  out.fd_d2 = static_cast<double>((100.0L * d2b - d2a) / 99.0L);

  auto agree = [](double x, double y) { return std::abs(x - y) <= 1e-6 * std::max(1.0, std::abs(x)); };
  out.conditioning_warning = !(agree(out.d1, out.fd_d1) && agree(out.d2, out.fd_d2));
  return out;
}

RankOneDir optimal_direction(const SingularForm& f) {
  require_strict(f, "optimal_direction");
  const double a = f.alpha, b = f.beta;
  const double s_big = a * a + a + b * b + (a - 1.0) * b + 1.0;
  const double n = 1.0 / (std::sqrt(2.0) * std::sqrt(s_big));
  const double comp1 = (b - 1.0) / std::sqrt(b + 1.0);
  const double comp2 = std::sqrt(2.0 * a * a + 2.0 * (b + 1.0) * a + b * b + 1.0);
  const double comp3 = (b - 1.0) * std::sqrt(b) / std::sqrt(b + 1.0);

  for (double sign : {1.0, -1.0}) {
    RankOneDir dir;
    dir.u = vec3(n * comp1, sign * n * comp2, n * comp3);
    dir.v = vec3(n * comp1, -sign * n * comp2, n * comp3);
    DiagSeries ds = series_diag(a, b, dir.u, dir.v);
    if (std::abs(ds.d1) <= 1e-8 && ds.d2 < 0.0) return dir;
  }
  throw error(errc::inconsistent, "optimal_direction: no sign assignment passed the derivative checks");
}

RankOneDir world_direction(const SingularForm& f, const RankOneDir& d) {
  RankOneDir out;
  out.u = f.q * d.u;
  out.v = transpose(f.r) * d.v;
  return out;
}

double closed_form_curvature(const SingularForm& f) {
  require_strict(f, "closed_form_curvature");
  const double a = f.alpha, b = f.beta;
  const double s_big = a * a + a + b * b + (a - 1.0) * b + 1.0;
  double q = (b - 1.0) * (b - 1.0) * (b - 1.0) * b /
             (4.0 * (a + 1.0) * (b + 1.0) * (a + b) * s_big);
  q *= 1.0 + g_curvature_perturbation.load(std::memory_order_relaxed);
  return -2.0 * q;
}

GridOracleResult grid_oracle(const SingularForm& f, int n_theta, int n_rs) {
  require_strict(f, "grid_oracle");
  if (n_theta < 64 || n_rs < 32)
    throw error(errc::invalid_input, "grid_oracle: minimum resolution is 64 x 32");
  const double a = f.alpha, b = f.beta;

  std::vector<double> ct(static_cast<std::size_t>(n_theta)), st(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    double th = 2.0 * M_PI * i / n_theta;
    ct[static_cast<std::size_t>(i)] = std::cos(th);
    st[static_cast<std::size_t>(i)] = std::sin(th);
  }
  std::vector<double> rad(static_cast<std::size_t>(n_rs));
  for (int i = 0; i < n_rs; ++i) rad[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n_rs - 1);

  struct Best {
    double d2 = std::numeric_limits<double>::infinity();
    int side = 0, i1 = 0, i2 = 0, ir = 0;
  };
  std::vector<Best> block_best(static_cast<std::size_t>(n_theta));
  std::vector<long> block_evals(static_cast<std::size_t>(n_theta), 0);

  detail::parallel_blocks(n_theta, [&](long lo, long hi) {
    for (long i1 = lo; i1 < hi; ++i1) {
      Best best;
      long evals = 0;
      const double s1 = st[static_cast<std::size_t>(i1)], c1 = ct[static_cast<std::size_t>(i1)];
      for (int i2 = 0; i2 < n_theta; ++i2) {
        const double s2 = st[static_cast<std::size_t>(i2)], c2 = ct[static_cast<std::size_t>(i2)];
        for (int side = 0; side < 2; ++side) {
          const double sin_own = side == 0 ? s1 : s2;
          const double sin_other = side == 0 ? s2 : s1;
          for (int ir = 0; ir < n_rs; ++ir) {
            double partner;
            if (!solve_partner_radial(b, rad[static_cast<std::size_t>(ir)], sin_own, sin_other, partner))
              continue;
            const double ru = side == 0 ? rad[static_cast<std::size_t>(ir)] : partner;
            const double rv = side == 0 ? partner : rad[static_cast<std::size_t>(ir)];
            const Vec3 u = chart_vector(ru, c1, s1);
            const Vec3 v = chart_vector(rv, c2, s2);
            DiagSeries ds = series_diag(a, b, u, v);
            ++evals;
            if (std::abs(ds.d1) > 1e-6) continue;
            if (ds.d2 < best.d2) best = Best{ds.d2, side, static_cast<int>(i1), i2, ir};
          }
        }
      }
      block_best[static_cast<std::size_t>(i1)] = best;
      block_evals[static_cast<std::size_t>(i1)] = evals;
    }
  });

  Best best;
  long total = 0;
  for (int i1 = 0; i1 < n_theta; ++i1) {
    total += block_evals[static_cast<std::size_t>(i1)];
    const Best& cand = block_best[static_cast<std::size_t>(i1)];
    if (cand.d2 < best.d2) best = cand;
  }
  if (!std::isfinite(best.d2))
    throw error(errc::inconsistent, "grid_oracle: empty feasible set");

  GridOracleResult out;
  out.param.theta1 = 2.0 * M_PI * best.i1 / n_theta;
  out.param.theta2 = 2.0 * M_PI * best.i2 / n_theta;
  const double sin_own = best.side == 0 ? st[static_cast<std::size_t>(best.i1)] : st[static_cast<std::size_t>(best.i2)];
  const double sin_other = best.side == 0 ? st[static_cast<std::size_t>(best.i2)] : st[static_cast<std::size_t>(best.i1)];
  double partner = 0.0;
  solve_partner_radial(b, rad[static_cast<std::size_t>(best.ir)], sin_own, sin_other, partner);
  out.param.r = best.side == 0 ? rad[static_cast<std::size_t>(best.ir)] : partner;
  out.param.s = best.side == 0 ? partner : rad[static_cast<std::size_t>(best.ir)];
  out.dir = out.param.direction();
  out.series = directional_series(mat3_diag(1.0, a, b), out.dir);
  out.evaluations = total;
  return out;
}

std::vector<double> curvature_landscape(const SingularForm& f, int n_theta, int n_rs) {
  require_strict(f, "curvature_landscape");
  if (n_theta < 2 || n_rs < 2)
    throw error(errc::invalid_input, "curvature_landscape: grid too small");
  const double a = f.alpha, b = f.beta;

  std::vector<double> ct(static_cast<std::size_t>(n_theta)), st(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    double th = M_PI * i / (n_theta - 1);
    ct[static_cast<std::size_t>(i)] = std::cos(th);
    st[static_cast<std::size_t>(i)] = std::sin(th);
  }
  std::vector<double> rad(static_cast<std::size_t>(n_rs));
  for (int i = 0; i < n_rs; ++i) rad[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n_rs - 1);

  std::vector<double> grid(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_theta),
                           std::numeric_limits<double>::infinity());
  detail::parallel_blocks(n_theta, [&](long lo, long hi) {
    for (long i1 = lo; i1 < hi; ++i1) {
      const double s1 = st[static_cast<std::size_t>(i1)], c1 = ct[static_cast<std::size_t>(i1)];
      for (int i2 = 0; i2 < n_theta; ++i2) {
        const double s2 = st[static_cast<std::size_t>(i2)], c2 = ct[static_cast<std::size_t>(i2)];
        double cell = std::numeric_limits<double>::infinity();
        for (int side = 0; side < 2; ++side) {
          const double sin_own = side == 0 ? s1 : s2;
          const double sin_other = side == 0 ? s2 : s1;
          for (int ir = 0; ir < n_rs; ++ir) {
            double partner;
            if (!solve_partner_radial(b, rad[static_cast<std::size_t>(ir)], sin_own, sin_other, partner))
              continue;
            const double ru = side == 0 ? rad[static_cast<std::size_t>(ir)] : partner;
            const double rv = side == 0 ? partner : rad[static_cast<std::size_t>(ir)];
            DiagSeries ds = series_diag(a, b, chart_vector(ru, c1, s1), chart_vector(rv, c2, s2));
            if (std::abs(ds.d1) > 1e-6) continue;
            cell = std::min(cell, ds.d2);
          }
        }
        grid[static_cast<std::size_t>(i1) * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(i2)] = cell;
      }
    }
  });
  return grid;
}

void set_test_curvature_perturbation(double rel) noexcept {
  g_curvature_perturbation.store(rel, std::memory_order_relaxed);
}

double test_curvature_perturbation() noexcept {
  return g_curvature_perturbation.load(std::memory_order_relaxed);
}

}  // namespace lindist
