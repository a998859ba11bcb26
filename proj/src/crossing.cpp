// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lindist/distortion.hpp"
#include "lindist/error.hpp"
#include "lindist/sym_eigen.hpp"

namespace lindist {

namespace {

using ld = long double;

void require_strict(const SingularForm& f, const char* who) {
  if (!(f.alpha > 1.0 + 1e-9) || !(f.beta > f.alpha * (1.0 + 1e-9)))
    throw error(errc::degenerate_spectrum, std::string(who) + ": needs 1 < alpha < beta strictly");
}

ld s_poly(ld a, ld b) { return a * a + a + b * b + (a - 1.0L) * b + 1.0L; }

// k3 x^3 + k2 x^2 + k1 x + k0 = 0, the characteristic relation in the signed
// eigenvalue-root x (its square is a Gram eigenvalue of the pencil).
struct Cubic {
  ld k3, k2, k1, k0;
};

Cubic signed_cubic(ld a, ld b, ld t) {
  const ld s = s_poly(a, b);
  Cubic c;
  c.k0 = 2.0L * a * b * (b + 1.0L) * s -
         b * t * (2.0L * a * a + 2.0L * a * (a + 4.0L) * b + b * b * b + b * b + b + 1.0L);
  c.k1 = t * (2.0L * a * a * (b + 1.0L) * (b + 1.0L) + a * (b * (b + 6.0L) + 1.0L) * (b + 1.0L) +
              b * (b * (b * (b + 4.0L) - 2.0L) + 4.0L) + 1.0L) -
         2.0L * (b + 1.0L) * s * (a * (b + 1.0L) - b);
  c.k2 = -2.0L * (b + 1.0L) * (b + 1.0L - a) * s - 2.0L * (b + 1.0L) * t * s;
  c.k3 = 2.0L * (b + 1.0L) * s;
  return c;
}

// Three real roots, ascending. The spectrum of a symmetric pencil keeps the
// discriminant positive here; the acos argument still gets clamped.
std::array<ld, 3> cubic_roots(const Cubic& c) {
  const ld b = c.k2 / c.k3, cc = c.k1 / c.k3, d = c.k0 / c.k3;
  const ld p = cc - b * b / 3.0L;
  const ld q = 2.0L * b * b * b / 27.0L - b * cc / 3.0L + d;
  const ld shift = -b / 3.0L;
  if (!(p < 0.0L)) return {shift, shift, shift};
  const ld r = std::sqrt(-p / 3.0L);
  ld arg = -q / (2.0L * r * r * r);
  arg = std::clamp(arg, -1.0L, 1.0L);
  const ld phi = std::acos(arg) / 3.0L;
  constexpr ld pi = std::numbers::pi_v<ld>;
  std::array<ld, 3> out{2.0L * r * std::cos(phi - 2.0L * pi / 3.0L) + shift,
                        2.0L * r * std::cos(phi - 4.0L * pi / 3.0L) + shift,
                        2.0L * r * std::cos(phi) + shift};
  std::sort(out.begin(), out.end());
  return out;
}

// Continuity-labeled Gram branches: the signed roots never collide, so their
// ascending order is a global labeling; squares give (mid, min, max).
std::array<ld, 3> branches_ld(ld a, ld b, ld t) {
  auto r = cubic_roots(signed_cubic(a, b, t));
  return {r[1] * r[1], r[0] * r[0], r[2] * r[2]};  // min, mid, max
}

// Quadratic q2 t^2 + q1 t + q0 = 0 satisfied by the crossing points.
void crossing_quadratic(ld a, ld b, ld& q2, ld& q1, ld& q0) {
  const ld p0 = a * a * a * a * b * b + 2.0L * a * a * a * a * b + a * a * a * a -
                2.0L * a * a * b * b * b - 4.0L * a * a * b * b - 2.0L * a * a * b -
                a * b * b * b * b * b - a * b * b * b * b + 2.0L * a * b * b * b +
                2.0L * a * b * b - a * b - a + b * b * b * b * b + b * b * b * b + b * b + b;
  const ld p1 = 4.0L * a * a * a * b * b + 8.0L * a * a * a * b + 4.0L * a * a * a +
                a * a * b * b * b + 7.0L * a * a * b * b + 7.0L * a * a * b + a * a +
                2.0L * a * b * b * b * b - 4.0L * a * b * b * b - 12.0L * a * b * b -
                4.0L * a * b + 2.0L * a - b * b * b * b * b - 6.0L * b * b * b * b -
                b * b * b - b * b - 6.0L * b - 1.0L;
  const ld p2 = -2.0L * a * a * b * b - 4.0L * a * a * b - 2.0L * a * a - a * b * b * b -
                7.0L * a * b * b - 7.0L * a * b - a - b * b * b * b - 4.0L * b * b * b +
                2.0L * b * b - 4.0L * b - 1.0L;
  q2 = p2;
  q1 = p1;
  q0 = -2.0L * p0;
}

double min_sorted_gap(const SingularForm& f, const Mat3& bm, double t) {
  Mat3 m = mat3_diag(1.0, f.alpha, f.beta) + t * bm;
  SymEigen3 e = sym_eigen_jacobi(gram(m));
  return std::min(e.values[1] - e.values[0], e.values[2] - e.values[1]);
}

}  // namespace

std::array<double, 3> pencil_charpoly(const SingularForm& f, const RankOneDir& b0, double lam) {
  require_strict(f, "pencil_charpoly");
  const Mat3 a = mat3_diag(1.0, f.alpha, f.beta);
  const Mat3 bm = b0.matrix();
  const Mat3 g0 = gram(a);
  const Mat3 atb = transpose(a) * bm;
  const Mat3 g1 = atb + transpose(atb);
  const Mat3 g2 = transpose(bm) * bm;
  const double mu = lam * lam;

  auto sum_minors2 = [](const Mat3& m) {
    double s = 0.0;
    s += m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    s += m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    s += m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return s;
  };
  auto i2_at = [&](double t) { return sum_minors2(g0 + t * g1 + (t * t) * g2); };

  // trace and determinant are quadratic in t with known coefficients; the
  // second invariant is quadratic too (that is the point), recovered by
  // exact three-point interpolation
  const double i1_0 = trace(g0), i1_1 = trace(g1), i1_2 = trace(g2);
  const double det_a = det3(a);
  const double kappa = dot(b0.v, inverse3(a) * b0.u);
  const double i3_0 = det_a * det_a;
  const double i3_1 = 2.0 * det_a * det_a * kappa;
  const double i3_2 = det_a * det_a * kappa * kappa;
  const double i2_0 = i2_at(0.0);
  const double i2_p = i2_at(1.0), i2_m = i2_at(-1.0);
  const double i2_1 = 0.5 * (i2_p - i2_m);
  const double i2_2 = 0.5 * (i2_p + i2_m) - i2_0;

  std::array<double, 3> c{};
  c[2] = i1_2 * mu * mu - i2_2 * mu + i3_2;
  c[1] = i1_1 * mu * mu - i2_1 * mu + i3_1;
  c[0] = -mu * mu * mu + i1_0 * mu * mu - i2_0 * mu + i3_0;

  // self-check against direct determinant evaluation
  double worst = 0.0, scale = 1.0;
  for (double t : {-2.0, -0.5, 0.5, 1.0, 2.0}) {
    Mat3 g = g0 + t * g1 + (t * t) * g2;
    g(0, 0) -= mu;
    g(1, 1) -= mu;
    g(2, 2) -= mu;
    const double direct = det3(g);
    const double poly = (c[2] * t + c[1]) * t + c[0];
    worst = std::max(worst, std::abs(direct - poly));
    scale = std::max(scale, std::abs(direct));
  }
  if (worst > 1e-9 * scale)
    throw error(errc::inconsistent, "pencil_charpoly: quadratic model failed the determinant check");
  return c;
}

double t_of_lambda(const SingularForm& f, double lam) {
  require_strict(f, "t_of_lambda");
  const ld a = f.alpha, b = f.beta, x = lam;
  const ld s = s_poly(a, b);
  const ld numer = 2.0L * (b + 1.0L) * s * (x - 1.0L) * (x + a) * (x - b);
  const ld c1 = -2.0L * (b + 1.0L) * s;
  const ld b1 = 2.0L * a * a * (b + 1.0L) * (b + 1.0L) + a * (b * (b + 6.0L) + 1.0L) * (b + 1.0L) +
                b * (b * (b * (b + 4.0L) - 2.0L) + 4.0L) + 1.0L;
  const ld a1 = -b * (2.0L * a * a + 2.0L * a * (a + 4.0L) * b + b * b * b + b * b + b + 1.0L);
  const ld denom = (c1 * x + b1) * x + a1;
  const ld denom_scale = (std::abs(c1) * std::abs(x) + std::abs(b1)) * std::abs(x) + std::abs(a1);
  if (std::abs(denom) <= 1e-12L * denom_scale)
    throw error(errc::pole, "t_of_lambda: pole of the rational expression");
  return static_cast<double>(-numer / denom);
}

PencilBranches branch_eigenvalues(const SingularForm& f, double t) {
  require_strict(f, "branch_eigenvalues");
  auto br = branches_ld(f.alpha, f.beta, t);
  PencilBranches out;
  out.t = t;
  out.lam_min = static_cast<double>(br[0]);
  out.lam_mid = static_cast<double>(br[1]);
  out.lam_max = static_cast<double>(br[2]);
  return out;
}

std::vector<PencilBranches> branch_table(const SingularForm& f, double t_lo, double t_hi, int n) {
  require_strict(f, "branch_table");
  if (n < 2 || !(t_lo < t_hi)) throw error(errc::invalid_input, "branch_table: bad range");
  std::vector<PencilBranches> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / (n - 1);
    rows.push_back(branch_eigenvalues(f, t));
  }
  return rows;
}

std::vector<PencilBranches> branch_table_by_marching(const SingularForm& f, double t_lo,
                                                     double t_hi, int n) {
  require_strict(f, "branch_table_by_marching");
  if (n < 2 || !(t_lo < t_hi)) throw error(errc::invalid_input, "branch_table_by_marching: bad range");
  const RankOneDir b0 = optimal_direction(f);
  const Mat3 a = mat3_diag(1.0, f.alpha, f.beta);
  const Mat3 bm = b0.matrix();

  auto sorted_at = [&](double t) {
    SymEigen3 e = sym_eigen_jacobi(gram(a + t * bm));
    return std::array<double, 3>{e.values[0], e.values[1], e.values[2]};
  };

  const double step = (t_hi - t_lo) / (n - 1);
  // march from t = 0 outward so labels inherit the sorted order at the center
  auto march = [&](double from, double to) {
    std::vector<std::pair<double, std::array<double, 3>>> out;
    const double dir = to >= from ? 1.0 : -1.0;
    const long count = std::lround(std::abs(to - from) / step);
    std::array<double, 3> prev1 = sorted_at(from);  // labels = sorted at start
    std::array<double, 3> prev2 = prev1;
    out.push_back({from, prev1});
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (long i = 1; i <= count; ++i) {
      const double t = from + dir * step * i;
      const auto w = sorted_at(t);
      std::array<double, 3> pred;
      for (int k = 0; k < 3; ++k) pred[static_cast<std::size_t>(k)] = 2.0 * prev1[static_cast<std::size_t>(k)] - prev2[static_cast<std::size_t>(k)];
      double best_cost = std::numeric_limits<double>::infinity();
      std::array<double, 3> best{};
      for (const auto& p : perms) {
        std::array<double, 3> cand{w[static_cast<std::size_t>(p[0])], w[static_cast<std::size_t>(p[1])], w[static_cast<std::size_t>(p[2])]};
        double cost = 0.0;
        for (int k = 0; k < 3; ++k) cost += std::abs(cand[static_cast<std::size_t>(k)] - pred[static_cast<std::size_t>(k)]);
        if (cost < best_cost) {
          best_cost = cost;
          best = cand;
        }
      }
      prev2 = prev1;
      prev1 = best;
      out.push_back({t, best});
    }
    return out;
  };

  // anchor at the grid point nearest zero, extended to zero if needed
  double anchor = t_lo + step * std::clamp(std::round((0.0 - t_lo) / step), 0.0, static_cast<double>(n - 1));
  auto down = march(anchor, t_lo);
  auto up = march(anchor, t_hi);

  std::vector<PencilBranches> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (auto it = down.rbegin(); it != down.rend(); ++it) {
    PencilBranches r;
    r.t = it->first;
    r.lam_min = it->second[0];
    r.lam_mid = it->second[1];
    r.lam_max = it->second[2];
    rows.push_back(r);
  }
  for (std::size_t i = 1; i < up.size(); ++i) {
    PencilBranches r;
    r.t = up[i].first;
    r.lam_min = up[i].second[0];
    r.lam_mid = up[i].second[1];
    r.lam_max = up[i].second[2];
    rows.push_back(r);
  }
  return rows;
}

CrossingInterval crossing_interval(const SingularForm& f) {
  require_strict(f, "crossing_interval");
  const ld a = f.alpha, b = f.beta;
  ld q2, q1, q0;
  crossing_quadratic(a, b, q2, q1, q0);
  if (q2 == 0.0L) throw error(errc::inconsistent, "crossing_interval: quadratic degenerated");
  const ld disc = q1 * q1 - 4.0L * q2 * q0;
  if (!(disc > 0.0L)) throw error(errc::inconsistent, "crossing_interval: no real crossing pair");
  const ld sd = std::sqrt(disc);
  const ld r1 = (-q1 - (q1 >= 0.0L ? sd : -sd)) / (2.0L * q2);
  const ld r2 = q0 / (q2 * r1);
  const ld lo = std::min(r1, r2), hi = std::max(r1, r2);
  if (!(lo < 0.0L) || !(hi > 0.0L))
    throw error(errc::inconsistent, "crossing_interval: roots do not straddle zero");

  CrossingInterval out;
  out.t_minus = static_cast<double>(lo);
  out.t_plus = static_cast<double>(hi);

  // certify both roots as genuine branch coincidences
  auto bm_br = branches_ld(a, b, lo);
  auto bp_br = branches_ld(a, b, hi);
  const ld gap_minus = std::abs(bm_br[2] - bm_br[1]);  // mid meets max on the left
  const ld gap_plus = std::abs(bp_br[1] - bp_br[0]);   // min meets mid on the right
  if (gap_minus > 1e-7L * std::max(bm_br[2], 1.0L) || gap_plus > 1e-7L * std::max(bp_br[1], 1.0L))
    throw error(errc::inconsistent, "crossing_interval: root is not a branch coincidence");

  auto h_of = [](const std::array<ld, 3>& w) {
    const ld mx = std::max({w[0], w[1], w[2]});
    const ld mn = std::min({w[0], w[1], w[2]});
    return static_cast<double>(std::sqrt(mx / mn));
  };
  out.h_minus = h_of(bm_br);
  out.h_plus = h_of(bp_br);
  return out;
}

ConcavityReport concavity_certificate(const SingularForm& f, const RankOneDir& b0, double lo,
                                      double hi, int n) {
  require_strict(f, "concavity_certificate");
  if (n < 8 || !(lo < 0.0) || !(hi > 0.0))
    throw error(errc::invalid_input, "concavity_certificate: need lo < 0 < hi and n >= 8");
  const Mat3 a = mat3_diag(1.0, f.alpha, f.beta);
  const Mat3 bm = b0.matrix();
  const double h_a = linear_distortion(a);

  ConcavityReport rep;
  rep.h_center = h_a;
  const double step = (hi - lo) / n;
  std::vector<double> hs(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    hs[static_cast<std::size_t>(i)] = linear_distortion(a + (lo + step * i) * bm);
  rep.h_left = hs.front();
  rep.h_right = hs.back();

  double worst = -std::numeric_limits<double>::infinity();
  double worst_t = 0.0;
  for (int i = 1; i < n; ++i) {
    const double sdd = (hs[static_cast<std::size_t>(i) + 1] - 2.0 * hs[static_cast<std::size_t>(i)] + hs[static_cast<std::size_t>(i) - 1]) / (step * step);
    if (sdd > worst) {
      worst = sdd;
      worst_t = lo + step * i;
    }
  }
  rep.max_second_difference = worst;
  rep.worst_t = worst_t;

  if (worst > 1e-8) {
    rep.failure = "second differences exceed bound near t = " + std::to_string(worst_t);
    return rep;
  }
  if (!(rep.h_left < h_a) || !(rep.h_right < h_a)) {
    rep.failure = "endpoint distortion not strictly below the center value";
    return rep;
  }
  for (int i = 0; i <= n; ++i) {
    if (hs[static_cast<std::size_t>(i)] > h_a + 1e-10 * h_a) {
      rep.failure = "interior sample above H(A) at t = " + std::to_string(lo + step * i);
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

std::vector<double> scan_crossings(const SingularForm& f, const RankOneDir& b0, double t_lo,
                                   double t_hi, int n) {
  require_strict(f, "scan_crossings");
  if (n < 101 || !(t_lo < t_hi)) throw error(errc::invalid_input, "scan_crossings: bad scan request");
  const Mat3 bm = b0.matrix();

  const double step = (t_hi - t_lo) / (n - 1);
  std::vector<double> gaps(static_cast<std::size_t>(n));
  double max_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    gaps[static_cast<std::size_t>(i)] = min_sorted_gap(f, bm, t_lo + step * i);
    max_gap = std::max(max_gap, gaps[static_cast<std::size_t>(i)]);
  }

  std::vector<double> found;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(gaps[static_cast<std::size_t>(i)] <= gaps[static_cast<std::size_t>(i) - 1] &&
          gaps[static_cast<std::size_t>(i)] <= gaps[static_cast<std::size_t>(i) + 1]))
      continue;
    if (gaps[static_cast<std::size_t>(i)] > 1e-2 * max_gap) continue;
    double a_t = t_lo + step * (i - 1);
    double b_t = t_lo + step * (i + 1);
    for (int iter = 0; iter < 200 && (b_t - a_t) > 1e-14 * std::max(1.0, std::abs(a_t)); ++iter) {
      const double m1 = a_t + (b_t - a_t) / 3.0;
      const double m2 = b_t - (b_t - a_t) / 3.0;
      if (min_sorted_gap(f, bm, m1) < min_sorted_gap(f, bm, m2))
        b_t = m2;
      else
        a_t = m1;
    }
    const double root = 0.5 * (a_t + b_t);
    bool dup = false;
    for (double r : found)
      if (std::abs(r - root) <= 1e-8 * std::max(1.0, std::abs(root))) dup = true;
    if (!dup) found.push_back(root);
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace lindist
