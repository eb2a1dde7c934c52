#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dslit/correlations.hpp"

using namespace dslit;

namespace {

struct Fixture {
  ExperimentConfig config = neutron_config();
  double tau0 = derive_scales(config).tau0;

  ExtremaResult extrema(double lo = 0.01, double hi = 5.0, ExtremaOptions opt = {}) const {
    return find_extrema(config.tau, lo * tau0, hi * tau0, config, opt);
  }
};

double first_term(const ScreenState& s) {
  const SlitBeamParams& p = s.params();
  return s.config().mass * p.B * p.B * p.inv_R / 2.0;
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "single Gaussian keeps only the curvature term") {
  config.d = 0.0;
  for (double t_over : {0.1, 0.5, 2.0}) {
    const ScreenState s(config, t_over * tau0, config.tau);
    CHECK(sigma_xp(s) == first_term(s));
  }
}

TEST_CASE_FIXTURE(Fixture, "overloads agree") {
  const ScreenState s(config, 0.9 * tau0, config.tau);
  CHECK(sigma_xp(0.9 * tau0, config.tau, config, derive_scales(config)) == sigma_xp(s));
}

TEST_CASE_FIXTURE(Fixture, "curvature term governs the minimum, separation term the maximum") {
  const ExtremaResult ex = extrema();
  REQUIRE(ex.minimum);
  REQUIRE(ex.maximum);
  const ScreenState at_min(config, ex.minimum->t, config.tau);
  CHECK(first_term(at_min) / sigma_xp(at_min) == doctest::Approx(1.0).epsilon(0.01));
  const ScreenState at_max(config, ex.maximum->t, config.tau);
  const SlitBeamParams& p = at_max.params();
  const double separation = config.mass * p.D * p.D * p.inv_R / (4.0 + 4.0 * std::exp(-at_max.overlap_exponent()));
  CHECK(separation / sigma_xp(at_max) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE_FIXTURE(Fixture, "neutron extrema") {
  const ExtremaResult ex = extrema();
  REQUIRE(ex.minimum);
  REQUIRE(ex.maximum);
  CHECK(ex.minimum->t / tau0 == doctest::Approx(0.49).epsilon(0.01 / 0.49));
  CHECK(ex.maximum->t / tau0 == doctest::Approx(1.36).epsilon(0.01 / 1.36));
  CHECK(ex.bracket_tolerance == doctest::Approx(1e-4 * tau0));
  // Frozen from this implementation.
  CHECK(ex.minimum->t / tau0 == doctest::Approx(0.49281).epsilon(1e-4));
  CHECK(ex.maximum->t / tau0 == doctest::Approx(1.36969).epsilon(1e-4));
  CHECK(ex.minimum->sigma_xp / kConstants.hbar == doctest::Approx(26.895).epsilon(1e-4));
  CHECK(ex.maximum->sigma_xp / kConstants.hbar == doctest::Approx(428.240).epsilon(1e-4));
}

TEST_CASE_FIXTURE(Fixture, "extrema are interior and verified by neighbors") {
  const ExtremaResult ex = extrema();
  const double h = 0.01 * tau0;
  auto value = [&](double t) { return sigma_xp(ScreenState(config, t, config.tau)); };
  CHECK(value(ex.minimum->t - h) > ex.minimum->sigma_xp);
  CHECK(value(ex.minimum->t + h) > ex.minimum->sigma_xp);
  CHECK(value(ex.maximum->t - h) < ex.maximum->sigma_xp);
  CHECK(value(ex.maximum->t + h) < ex.maximum->sigma_xp);
}

TEST_CASE_FIXTURE(Fixture, "extrema stable when the bracket tolerance halves") {
  const ExtremaResult a = extrema(0.01, 5.0, {400, 1e-4});
  const ExtremaResult b = extrema(0.01, 5.0, {400, 5e-5});
  CHECK(std::abs(a.minimum->t - b.minimum->t) < 2.0 * a.bracket_tolerance);
  CHECK(std::abs(a.maximum->t - b.maximum->t) < 2.0 * a.bracket_tolerance);
}

TEST_CASE_FIXTURE(Fixture, "uncorrelated and positively correlated sources have only a maximum") {
  config.rho = 0.0;
  ExtremaResult ex = extrema();
  CHECK_FALSE(ex.minimum);
  REQUIRE(ex.maximum);
  CHECK(ex.maximum->t / tau0 == doctest::Approx(1.4196).epsilon(1e-3));

  config.rho = 1.0;
  ex = extrema();
  CHECK_FALSE(ex.minimum);
  REQUIRE(ex.maximum);
  CHECK(ex.maximum->t / tau0 == doctest::Approx(0.3697).epsilon(1e-3));
}

TEST_CASE_FIXTURE(Fixture, "monotone stretch has no extrema") {
  const ExtremaResult ex = extrema(0.7, 0.72);
  CHECK_FALSE(ex.minimum);
  CHECK_FALSE(ex.maximum);
}

TEST_CASE_FIXTURE(Fixture, "curve sampling") {
  SUBCASE("two samples are the endpoints") {
    const SigmaXpCurve c = sigma_xp_curve(config.tau, 0.1 * tau0, 0.2 * tau0, 2, config);
    REQUIRE(c.samples.size() == 2);
    CHECK(c.samples[0].t == 0.1 * tau0);
    CHECK(c.samples[1].t == doctest::Approx(0.2 * tau0).epsilon(1e-15));
    CHECK(c.tau == config.tau);
  }
  SUBCASE("shape for rho = -1: one minimum then one maximum") {
    const SigmaXpCurve c = sigma_xp_curve(config.tau, 0.0, 3.0 * tau0, 601, config);
    std::vector<char> kinds;
    for (std::size_t i = 1; i + 1 < c.samples.size(); ++i) {
      const double l = c.samples[i].sigma_xp - c.samples[i - 1].sigma_xp;
      const double r = c.samples[i + 1].sigma_xp - c.samples[i].sigma_xp;
      if (l < 0.0 && r > 0.0) kinds.push_back('m');
      if (l > 0.0 && r < 0.0) kinds.push_back('M');
      CHECK(c.samples[i].t > c.samples[i - 1].t);
      CHECK(std::isfinite(c.samples[i].sigma_xp));
    }
    CHECK(kinds == std::vector<char>{'m', 'M'});
  }
  SUBCASE("invalid ranges") {
    CHECK_THROWS_AS(sigma_xp_curve(config.tau, 0.2, 0.1, 10, config), ValidationError);
    CHECK_THROWS_AS(sigma_xp_curve(config.tau, 0.1, 0.1, 10, config), ValidationError);
    CHECK_THROWS_AS(sigma_xp_curve(config.tau, 0.0, 0.1, 1, config), ValidationError);
    CHECK_THROWS_AS(sigma_xp_curve(config.tau, -0.1, 0.1, 10, config), ValidationError);
  }
}

TEST_CASE_FIXTURE(Fixture, "overlap conditions") {
  const ExtremaResult ex = extrema();
  CHECK(overlap_report(ScreenState(config, ex.minimum->t, config.tau)).b2_over_d2 > 1.0);
  CHECK(overlap_report(ScreenState(config, ex.maximum->t, config.tau)).d2_over_b2 > 1.0);
  const OverlapRatios r = overlap_report(ScreenState(config, tau0, config.tau));
  CHECK(r.b2_over_d2 * r.d2_over_b2 == doctest::Approx(1.0));
  config.d = 0.0;
  CHECK_THROWS_AS(overlap_report(ScreenState(config, tau0, config.tau)), std::domain_error);
}
