#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lindist/distortion.hpp"
#include "lindist/error.hpp"
#include "lindist/laminate.hpp"

using namespace lindist;

namespace {

SingularForm sing(double alpha, double beta) {
  SingularForm f;
  f.alpha = alpha;
  f.beta = beta;
  f.q = mat3_identity();
  f.r = mat3_identity();
  return f;
}

Mat3 rot_x(double t) {
  Mat3 m = mat3_identity();
  m(1, 1) = std::cos(t);
  m(1, 2) = -std::sin(t);
  m(2, 1) = std::sin(t);
  m(2, 2) = std::cos(t);
  return m;
}

Mat3 rot_z(double t) {
  Mat3 m = mat3_identity();
  m(0, 0) = std::cos(t);
  m(0, 1) = -std::sin(t);
  m(1, 0) = std::sin(t);
  m(1, 1) = std::cos(t);
  return m;
}

}  // namespace

TEST_CASE("sawtooth profile") {
  Sawtooth s = make_sawtooth(-2.0, 1.0);
  CHECK(s.period == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(sawtooth_eval(s, 0.0) == 0.0);
  CHECK(sawtooth_eval(s, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sawtooth_eval(s, -0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sawtooth_eval(s, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sawtooth_eval(s, -0.25) == doctest::Approx(0.5).epsilon(1e-12));

  // periodic, continuous, bounded
  for (double r = -4.0; r <= 4.0; r += 1.0 / 128) {
    const double v = sawtooth_eval(s, r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(sawtooth_eval(s, r + s.period) == doctest::Approx(v).epsilon(1e-9));
    CHECK(std::abs(sawtooth_eval(s, r + 1e-9) - v) < 3e-9);
  }

  // right-hand slope at the kinks
  CHECK(sawtooth_slope(s, 0.0) == 1.0);
  CHECK(sawtooth_slope(s, 1.0) == -2.0);
  CHECK(sawtooth_slope(s, -0.5) == -2.0);
  CHECK(sawtooth_slope(s, 0.5) == 1.0);
  CHECK(sawtooth_slope(s, -0.1) == -2.0);

  CHECK_THROWS_AS((void)make_sawtooth(1.0, 2.0), const error&);
  CHECK_THROWS_AS((void)make_sawtooth(-1.0, 0.0), const error&);
}

TEST_CASE("phase fractions balance the slopes") {
  for (auto [tm, tp] : {std::pair{-2.0, 1.0}, {-8.1, 1.52}, {-0.3, 2.7}}) {
    const double fplus = -tm / (tp - tm);
    CHECK(fplus * tp + (1.0 - fplus) * tm == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fplus > 0.0);
    CHECK(fplus < 1.0);
  }
}

TEST_CASE("laminate map basics at diag(1,2,4)") {
  LaminateSpec l = make_laminate(mat3_diag(1, 2, 4), 10);
  CHECK(l.t_minus == doctest::Approx(-2.0458436643111895).epsilon(1e-12));
  CHECK(l.t_plus == doctest::Approx(1.1921851277258236).epsilon(1e-12));

  // points with zero phase map exactly linearly
  Vec3 perp = normalized(cross(l.b0.v, vec3(0.3, -0.2, 0.9)));
  CHECK(std::abs(dot(perp, l.b0.v)) < 1e-14);
  Vec3 img = laminate_eval(l, perp);
  Vec3 lin = l.a * perp;
  CHECK(norm(img - lin) < 1e-12);

  // uniform closeness: |f_j - Ax| <= 1/j
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    Vec3 x = vec3(unit(rng), unit(rng), unit(rng));
    CHECK(norm(laminate_eval(l, x) - l.a * x) <= 1.0 / l.j + 1e-12);
  }
}

TEST_CASE("gradient takes exactly the two phase values") {
  LaminateSpec l = make_laminate(mat3_diag(1, 2, 4), 7);
  const Mat3 lo = l.a + l.t_minus * l.b0.matrix();
  const Mat3 hi = l.a + l.t_plus * l.b0.matrix();
  std::mt19937 rng(78);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int saw_lo = 0, saw_hi = 0;
  for (int i = 0; i < 2000; ++i) {
    Vec3 x = vec3(unit(rng), unit(rng), unit(rng));
    Mat3 g = laminate_gradient(l, x);
    const double dlo = frobenius_norm(g - lo), dhi = frobenius_norm(g - hi);
    CHECK(std::min(dlo, dhi) < 1e-12);
    (dlo < dhi ? saw_lo : saw_hi)++;
  }
  CHECK(saw_lo > 200);
  CHECK(saw_hi > 200);
  // the two values differ by a rank-one jump
  const Mat3 diff = hi - lo;
  const Mat3 expect = (l.t_plus - l.t_minus) * l.b0.matrix();
  CHECK(frobenius_norm(diff - expect) < 1e-12);
}

TEST_CASE("jump report at diag(1,2,4)") {
  LaminateSpec l = make_laminate(mat3_diag(1, 2, 4), 3);
  JumpReport r = laminate_distortion(l);
  CHECK(r.h_a == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.h_laminate == doctest::Approx(3.9753929000877904).epsilon(1e-11));
  CHECK(r.ratio == doctest::Approx(1.0061898535643272).epsilon(1e-11));
  CHECK(r.fraction_plus == doctest::Approx(0.63181762600207415).epsilon(1e-12));

  // gradient values do not involve j
  for (int j : {1, 7, 100}) {
    LaminateSpec lj = make_laminate(mat3_diag(1, 2, 4), j);
    JumpReport rj = laminate_distortion(lj);
    CHECK(rj.h_laminate == r.h_laminate);
    CHECK(rj.ratio == r.ratio);
  }
}

TEST_CASE("jump report survives frame and scale changes") {
  const Mat3 base = mat3_diag(1, 2, 4);
  const Mat3 world = 3.0 * (rot_x(0.7) * base * rot_z(-0.4));
  LaminateSpec l = make_laminate(world, 5);
  JumpReport r = laminate_distortion(l);
  CHECK(r.h_a == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.h_laminate == doctest::Approx(3.9753929000877904).epsilon(1e-9));
  CHECK(r.ratio == doctest::Approx(1.0061898535643272).epsilon(1e-9));
  CHECK(norm(l.b0.u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(l.b0.v) == doctest::Approx(1.0).epsilon(1e-12));

  // closeness bound holds in the world frame too
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    Vec3 x = vec3(unit(rng), unit(rng), unit(rng));
    CHECK(norm(laminate_eval(l, x) - world * x) <= 1.0 / l.j + 1e-12);
  }
}

TEST_CASE("degenerate matrices are rejected") {
  CHECK_THROWS_AS((void)make_laminate(2.0 * mat3_identity(), 4), const error&);
  CHECK_THROWS_AS((void)make_laminate(mat3_diag(1, 2, 2), 4), const error&);
  CHECK_THROWS_AS((void)make_laminate(mat3_diag(1, 2, 4), 0), const error&);
  try {
    (void)make_laminate(2.0 * mat3_identity(), 4);
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_spectrum);
  }
}

TEST_CASE("sampled distortion inside a slab matches the phase value") {
  LaminateSpec l = make_laminate(mat3_diag(1, 2, 4), 2);
  Sawtooth s = make_sawtooth(l.t_minus, l.t_plus);

  // center of the rising slab: phase = 1/(2 t_plus)
  const double phase_plus = 0.5 / l.t_plus;
  Vec3 xp = (phase_plus / l.j) * l.b0.v;
  const double h_plus = linear_distortion(l.a + l.t_plus * l.b0.matrix());
  std::vector<double> radii{0.05, 0.02};
  auto fj = [&](const Vec3& x) { return laminate_eval(l, x); };
  const double sampled_p = sampled_distortion(fj, xp, radii);
  CHECK(sampled_p == doctest::Approx(h_plus).epsilon(0.02));
  CHECK(sawtooth_slope(s, l.j * dot(l.b0.v, xp)) == l.t_plus);

  // center of the falling slab: phase = 1/(2 t_minus)
  const double phase_minus = 0.5 / l.t_minus;
  Vec3 xm = (phase_minus / l.j) * l.b0.v;
  const double h_minus = linear_distortion(l.a + l.t_minus * l.b0.matrix());
  const double sampled_m = sampled_distortion(fj, xm, radii);
  CHECK(sampled_m == doctest::Approx(h_minus).epsilon(0.02));
  CHECK(sawtooth_slope(s, l.j * dot(l.b0.v, xm)) == l.t_minus);
}

TEST_CASE("lamination angle closed form") {
  CHECK(lamination_angle(sing(2, 4)) == doctest::Approx(1.1970041519603862).epsilon(1e-12));
  CHECK(lamination_angle(sing(2, 10)) == doctest::Approx(0.97524144343807659).epsilon(1e-12));
  // strongly anisotropic limit: pi/4
  CHECK(std::abs(lamination_angle(sing(2, 1e6)) - M_PI / 4.0) < 1e-3);
  // nearly isotropic limit along beta = alpha + 1: arccos(1/sqrt(6))
  CHECK(std::abs(lamination_angle(sing(1e6, 1e6 + 1)) - std::acos(1.0 / std::sqrt(6.0))) < 1e-3);
  // proportional spectra: cos(angle) -> 1/(sqrt(2) sqrt(k^2+k+1))
  for (double k : {0.25, 0.5, 0.75}) {
    const double got = std::cos(lamination_angle(sing(k * 1e6, 1e6)));
    const double want = 1.0 / (std::sqrt(2.0) * std::sqrt(k * k + k + 1.0));
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
  }
  CHECK_THROWS_AS((void)lamination_angle(sing(1.0, 4.0)), const error&);
}

TEST_CASE("jump sweep along the proportional-spectra path") {
  std::vector<std::pair<double, double>> cells;
  for (double k : {0.1, 0.01, 0.001}) cells.push_back({k * 1e6, 1e6});
  auto rows = jump_sweep_cells(cells);
  REQUIRE(rows.size() == 3);
  for (const auto& c : rows) {
    CHECK(c.ok);
    CHECK(c.note.empty());
    CHECK(c.ratio > 1.0);
    CHECK(c.t_minus < 0.0);
    CHECK(c.t_plus > 0.0);
    CHECK(c.fraction_plus > 0.0);
    CHECK(c.fraction_plus < 1.0);
  }
  CHECK(rows[0].ratio == doctest::Approx(1.245154131941).epsilon(1e-9));
  CHECK(rows[1].ratio == doctest::Approx(1.393470749554).epsilon(1e-9));
  CHECK(rows[2].ratio == doctest::Approx(1.412094197944).epsilon(1e-9));
  CHECK(rows[0].ratio < rows[1].ratio);
  CHECK(rows[1].ratio < rows[2].ratio);
  CHECK(sweep_max_ratio(rows) == doctest::Approx(1.412094197944).epsilon(1e-9));
  CHECK(sweep_max_ratio(rows) <= std::sqrt(2.0) + 1e-9);
}

TEST_CASE("jump sweep along the fixed-alpha path decays toward 1") {
  std::vector<double> betas{10, 100, 1000, 1e4, 1e5, 1e6};
  auto rows = jump_sweep({2.0}, betas);
  REQUIRE(rows.size() == betas.size());
  CHECK(rows[0].ratio == doctest::Approx(1.0127553504455484).epsilon(1e-10));
  CHECK(rows[5].ratio == doctest::Approx(1.000000499992).epsilon(1e-9));
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].ok);
    CHECK(rows[i].ratio > rows[i + 1].ratio);
  }
  CHECK(rows.back().ok);
}

TEST_CASE("sweep records failures and keeps going") {
  auto rows = jump_sweep({1.5, 2.0}, {1.2, 4.0});
  REQUIRE(rows.size() == 4);
  int ok = 0, bad = 0;
  for (const auto& c : rows) {
    if (c.ok) {
      ok++;
      CHECK(c.beta == 4.0);
    } else {
      bad++;
      CHECK(c.beta == 1.2);
      CHECK_FALSE(c.note.empty());
    }
  }
  CHECK(ok == 2);
  CHECK(bad == 2);
  CHECK_THROWS_AS((void)jump_sweep({}, {4.0}), const error&);
  CHECK_THROWS_AS((void)jump_sweep_cells({}), const error&);
}

TEST_CASE("energy of the two-phase mix stays below the center energy") {
  LaminateSpec l = make_laminate(mat3_diag(1, 2, 4), 1);
  const double hm = linear_distortion(l.a + l.t_minus * l.b0.matrix());
  const double hp = linear_distortion(l.a + l.t_plus * l.b0.matrix());
  const double fplus = -l.t_minus / (l.t_plus - l.t_minus);
  for (const char* name : {"identity", "power:2", "power:3.5", "exp"}) {
    EnergySpec phi = EnergySpec::parse(name);
    CHECK(energy_of_two_phase(hp, hm, fplus, phi) < phi(4.0));
  }
}

TEST_CASE("convergence study") {
  auto rows = convergence_study(mat3_diag(1, 2, 4), {1, 10, 100});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.max_deviation <= 1.0 / r.j + 1e-12);
    CHECK(r.max_deviation > 0.5 / r.j);  // the sampler reaches near the peak
    CHECK(r.h_laminate == rows[0].h_laminate);
    CHECK(r.h_laminate < r.h_a);
    CHECK(r.h_a == doctest::Approx(4.0).epsilon(1e-12));
  }
  // deviation scales like 1/j: log-log slope -1 within 0.05
  const double s1 = std::log(rows[1].max_deviation / rows[0].max_deviation) / std::log(10.0);
  const double s2 = std::log(rows[2].max_deviation / rows[1].max_deviation) / std::log(10.0);
  CHECK(s1 == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(s2 == doctest::Approx(-1.0).epsilon(0.05));

  CHECK_THROWS_AS((void)convergence_study(mat3_diag(1, 2, 4), {10, 5}), const error&);
  CHECK_THROWS_AS((void)convergence_study(mat3_diag(1, 2, 4), {}), const error&);
}
