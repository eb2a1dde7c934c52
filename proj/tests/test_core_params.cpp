#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dslit/core_params.hpp"

using namespace dslit;

TEST_CASE("hbar is h over 2 pi") {
  CHECK(kConstants.hbar == doctest::Approx(kConstants.planck_h / (2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(kConstants.hbar > 0.0);
  CHECK(kConstants.planck_h > 0.0);
}

TEST_CASE("neutron scales") {
  const ExperimentConfig c = neutron_config();
  const DerivedScales s = derive_scales(c);
  // 1.67e-27 * (7.8e-6)^2 / 1.054571817e-34, evaluated by hand.
  CHECK(s.tau0 == doctest::Approx(9.63451e-4).epsilon(1e-5));
  REQUIRE(s.vz.has_value());
  // 6.62607015e-34 / (1.67e-27 * 2e-9)
  CHECK(*s.vz == doctest::Approx(198.3853).epsilon(1e-6));
  CHECK(c.tau == doctest::Approx(18.0 * s.tau0).epsilon(1e-14));
}

TEST_CASE("derive_scales is pure") {
  const ExperimentConfig c = neutron_config();
  const DerivedScales a = derive_scales(c);
  const DerivedScales b = derive_scales(c);
  CHECK(a.tau0 == b.tau0);
  CHECK(*a.vz == *b.vz);
  CHECK(a.tau0 == doctest::Approx(c.mass * c.sigma0 * c.sigma0 / kConstants.hbar).epsilon(1e-12));
}

TEST_CASE("vz absent without a wavelength") {
  ExperimentConfig c = neutron_config();
  c.lambda_dB.reset();
  CHECK_FALSE(derive_scales(c).vz.has_value());
}

TEST_CASE("validation names the offending field") {
  auto field_of = [](ExperimentConfig c) -> std::string {
    try {
      c.validate();
    } catch (const ValidationError& e) {
      return e.field();
    }
    return "";
  };
  ExperimentConfig c = neutron_config();
  CHECK(field_of(c).empty());

  ExperimentConfig bad = c;
  bad.sigma0 = 0.0;
  CHECK(field_of(bad) == "sigma0");
  CHECK_THROWS_AS(derive_scales(bad), ValidationError);

  bad = c;
  bad.mass = -1.0;
  CHECK(field_of(bad) == "mass");
  bad = c;
  bad.beta = std::nan("");
  CHECK(field_of(bad) == "beta");
  bad = c;
  bad.tau = 0.0;
  CHECK(field_of(bad) == "tau");
  bad = c;
  bad.d = -1e-6;
  CHECK(field_of(bad) == "d");
  bad = c;
  bad.rho = INFINITY;
  CHECK(field_of(bad) == "rho");
  bad = c;
  bad.lambda_dB = 0.0;
  CHECK(field_of(bad) == "lambda_dB");
  bad = c;
  bad.t = -1.0;
  CHECK(field_of(bad) == "t");

  bad = c;
  bad.d = 0.0;
  CHECK(field_of(bad).empty());
}

TEST_CASE("initial moments") {
  ExperimentConfig c = neutron_config();
  const double hbar = kConstants.hbar;

  SUBCASE("rho = 0") {
    c.rho = 0.0;
    const MomentSet m = initial_moments(c);
    CHECK(m.sigma_xp == 0.0);
    CHECK(m.sigma_pp == doctest::Approx(hbar / (std::sqrt(2.0) * c.sigma0)).epsilon(1e-14));
  }
  SUBCASE("rho = -1") {
    const MomentSet m = initial_moments(c);
    CHECK(m.sigma_xp == doctest::Approx(-hbar / 2.0).epsilon(1e-14));
    CHECK(m.sigma_pp == doctest::Approx(hbar / c.sigma0).epsilon(1e-14));
  }
  SUBCASE("position width") {
    CHECK(initial_moments(c).sigma_xx == doctest::Approx(5.5154e-6).epsilon(1e-4));
  }
  SUBCASE("uncertainty product grows with |rho|") {
    for (double rho : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      c.rho = rho;
      const MomentSet m = initial_moments(c);
      CHECK(m.sigma_xx * m.sigma_pp == doctest::Approx(hbar / 2.0 * std::sqrt(1.0 + rho * rho)).epsilon(1e-13));
    }
  }
}
