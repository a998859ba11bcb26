#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lindist/analysis.hpp"
#include "lindist/distortion.hpp"
#include "lindist/error.hpp"

using namespace lindist;

namespace {

Mat3 rot_y(double t) {
  Mat3 m = mat3_identity();
  m(0, 0) = std::cos(t);
  m(0, 2) = std::sin(t);
  m(2, 0) = -std::sin(t);
  m(2, 2) = std::cos(t);
  return m;
}

}  // namespace

TEST_CASE("full report for the (2,4) cell") {
  AnalysisReport r = analyze_sing(2, 4);
  CHECK(r.improvable);
  CHECK(r.reason.empty());
  CHECK(r.h_a == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.form.alpha == 2.0);
  CHECK(r.form.beta == 4.0);
  CHECK(std::abs(r.d1) <= 1e-8);
  CHECK(r.d2 == doctest::Approx(-1.0 / 45.0).epsilon(1e-6));
  CHECK(r.t_minus == doctest::Approx(-2.0458436643111895).epsilon(1e-12));
  CHECK(r.t_plus == doctest::Approx(1.1921851277258236).epsilon(1e-12));
  CHECK(r.h_minus == doctest::Approx(3.9753929000877904).epsilon(1e-11));
  CHECK(r.h_plus == doctest::Approx(3.9753929000877904).epsilon(1e-11));
  CHECK(r.ratio == doctest::Approx(1.0061898535643272).epsilon(1e-11));
  CHECK(r.angle_rad == doctest::Approx(1.1970041519603862).epsilon(1e-12));
  CHECK(r.fraction_plus == doctest::Approx(0.63181762600207415).epsilon(1e-12));
  CHECK(r.gap_identity == doctest::Approx(0.024607099912209556).epsilon(1e-9));
  // normalized frame: world data coincides
  CHECK(r.t_minus_world == r.t_minus);
  CHECK(r.t_plus_world == r.t_plus);
  CHECK(norm(r.b0.u - r.b0_world.u) < 1e-15);
  CHECK(norm(r.b0.v - r.b0_world.v) < 1e-15);
}

TEST_CASE("world-frame report matches the normalized one") {
  const Mat3 world = 2.5 * (rot_y(0.9) * mat3_diag(1, 2, 4) * rot_y(-0.3));
  AnalysisReport r = analyze(world);
  CHECK(r.improvable);
  CHECK(r.h_a == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.form.alpha == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.form.beta == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.form.scale == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(r.ratio == doctest::Approx(1.0061898535643272).epsilon(1e-9));
  CHECK(r.gap_identity == doctest::Approx(0.024607099912209556).epsilon(1e-7));
  CHECK(r.t_minus_world == doctest::Approx(2.5 * r.t_minus).epsilon(1e-12));
  CHECK(r.t_plus_world == doctest::Approx(2.5 * r.t_plus).epsilon(1e-12));
  // transported pencil reproduces the endpoint distortion
  const Mat3 b = r.b0_world.matrix();
  CHECK(linear_distortion(world + r.t_plus_world * b) == doctest::Approx(r.h_plus).epsilon(1e-9));
  CHECK(linear_distortion(world + r.t_minus_world * b) == doctest::Approx(r.h_minus).epsilon(1e-9));
}

TEST_CASE("degenerate spectra give structured no-improvement reports") {
  AnalysisReport conformal = analyze(mat3_identity());
  CHECK_FALSE(conformal.improvable);
  CHECK(conformal.h_a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conformal.reason.find("conformal") != std::string::npos);

  AnalysisReport scaled = analyze(3.0 * mat3_identity());
  CHECK_FALSE(scaled.improvable);
  CHECK(scaled.reason.find("conformal") != std::string::npos);

  AnalysisReport repeated = analyze(mat3_diag(1, 2, 2));
  CHECK_FALSE(repeated.improvable);
  CHECK(repeated.reason.find("repeated") != std::string::npos);
  CHECK(repeated.h_a == doctest::Approx(2.0).epsilon(1e-12));

  AnalysisReport low = analyze_sing(1.0, 5.0);
  CHECK_FALSE(low.improvable);
  CHECK_FALSE(low.reason.empty());
}

TEST_CASE("analyze_sing input validation") {
  CHECK_THROWS_AS((void)analyze_sing(0.5, 4.0), const error&);
  CHECK_THROWS_AS((void)analyze_sing(3.0, 2.0), const error&);
  CHECK_THROWS_AS((void)analyze_sing(2.0, std::nan("")), const error&);
  CHECK_THROWS_AS((void)analyze(mat3_zero()), const error&);
}

TEST_CASE("geometric progression family") {
  for (double c : {1.5, 2.0, 3.0}) {
    AnalysisReport r = geometric_example(c);
    CHECK(r.improvable);
    CHECK(r.h_a == doctest::Approx(c * c).epsilon(1e-12));
    CHECK(r.form.alpha == c);
    CHECK(r.form.beta == c * c);
    CHECK(r.gap_identity > 0.0);
  }
  CHECK_THROWS_AS((void)geometric_example(1.0), const error&);
  CHECK_THROWS_AS((void)geometric_example(0.3), const error&);
}

TEST_CASE("energy gap across the named family") {
  const Mat3 a = mat3_diag(1, 2, 4);
  CHECK(energy_gap(a, EnergySpec::parse("identity")) ==
        doctest::Approx(0.024607099912209556).epsilon(1e-9));
  CHECK(energy_gap(a, EnergySpec::parse("power:2")) > 0.0);
  CHECK(energy_gap(a, EnergySpec::parse("power:3.5")) > 0.0);
  CHECK(energy_gap(a, EnergySpec::parse("exp")) > 0.0);
  // identity gap equals h_a - two-phase average here because h+ = h-
  CHECK(energy_gap(a, EnergySpec::parse("identity")) ==
        doctest::Approx(4.0 - 3.9753929000877904).epsilon(1e-9));

  CHECK_THROWS_AS((void)energy_gap(mat3_diag(1, 1, 2), EnergySpec::parse("identity")), const error&);
  CHECK_THROWS_AS((void)energy_gap(2.0 * mat3_identity(), EnergySpec::parse("identity")), const error&);
  try {
    (void)energy_gap(mat3_diag(1, 1, 2), EnergySpec::parse("identity"));
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_spectrum);
  }
}

TEST_CASE("energy gap is frame and scale independent") {
  const Mat3 base = mat3_diag(1, 2, 4);
  const Mat3 world = 0.7 * (rot_y(1.1) * base * rot_y(0.5));
  for (const char* name : {"identity", "power:2", "exp"}) {
    EnergySpec phi = EnergySpec::parse(name);
    CHECK(energy_gap(world, phi) == doctest::Approx(energy_gap(base, phi)).epsilon(1e-7));
  }
}
