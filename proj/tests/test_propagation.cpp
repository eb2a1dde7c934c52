#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dslit/propagation.hpp"

using namespace dslit;

namespace {

struct Fixture {
  ExperimentConfig config = neutron_config();
  DerivedScales scales = derive_scales(config);
  double tau0 = scales.tau0;
};

// Trapezoid integral of |f|^2 over [-h, h].
template <typename F>
double norm_integral(F&& f, double h, std::size_t n = 40001) {
  const double dx = 2.0 * h / static_cast<double>(n - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * std::norm(f(-h + static_cast<double>(i) * dx));
  }
  return sum * dx;
}

bool close_complex(Amplitude a, Amplitude b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE_FIXTURE(Fixture, "free beam width") {
  CHECK(free_beam_width(0.0, config, scales) == doctest::Approx(config.sigma0).epsilon(1e-14));
  // Contractive waist at t = tau0 / 2 for rho = -1.
  CHECK(free_beam_width(tau0 / 2.0, config, scales) == doctest::Approx(config.sigma0 / std::sqrt(2.0)).epsilon(1e-14));
  config.rho = 0.0;
  CHECK(free_beam_width(tau0, config, scales) == doctest::Approx(std::sqrt(2.0) * config.sigma0).epsilon(1e-14));
}

TEST_CASE_FIXTURE(Fixture, "free inverse curvature") {
  CHECK(free_inv_curvature(tau0 / 2.0, config, scales) == doctest::Approx(0.0));
  config.rho = 0.0;
  const double t = 3.0 * tau0;
  CHECK(free_inv_curvature(t, config, scales) == doctest::Approx(t / (t * t + tau0 * tau0)).epsilon(1e-14));
  const double late = 1e6 * tau0;
  CHECK(free_inv_curvature(late, config, scales) * late == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(free_inv_curvature(0.0, config, scales) == 0.0);
}

TEST_CASE_FIXTURE(Fixture, "rho = 0 reduces to the textbook free Gaussian") {
  config.rho = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double t = 0.37 * i * tau0;
    const double b = config.sigma0 * std::sqrt(1.0 + t * t / (tau0 * tau0));
    const double r = (t * t + tau0 * tau0) / t;
    CHECK(free_beam_width(t, config, scales) == doctest::Approx(b).epsilon(1e-14));
    CHECK(1.0 / free_inv_curvature(t, config, scales) == doctest::Approx(r).epsilon(1e-14));
  }
}

TEST_CASE_FIXTURE(Fixture, "beam parameters match an independent complex-Gaussian propagation") {
  // Reference values from composing exact Fresnel propagators on
  // exp(-a x^2 + b x + c) in numpy. That run rounded hbar to 1.054571817e-34,
  // hence the looser tolerance on curvature.
  struct Ref {
    double rho, t_over_tau0, B, D, inv_R, Delta;
    Amplitude plus_10um, plus_m250um, minus_10um, minus_m250um;
  };
  const std::vector<Ref> refs{
      {-1.0, 1.0, 2.245126722481383e-04, 1.187500000000000e-03, 5.700190476018392e+01, 2.231879814164760e+04,
       {1.016338401716693e+00, -8.859384723032848e-01},
       {-1.459670872922322e+01, 5.289284388176267e+00},
       {6.762326220990431e-01, -1.566731143407463e+00},
       {7.854739386610512e-03, 4.224829202560853e-02}},
      {0.5, 0.3, 1.972981673492641e-04, 8.892487046632125e-04, 5.702195689353615e+01, 2.890057077579075e+04,
       {3.644190471814049e+00, -9.261704209850125e-01},
       {3.328903773922725e-01, 3.287208424624362e+01},
       {3.199625968437040e+00, -3.476816130313765e+00},
       {-1.038287265358270e-01, -3.245868154890980e-02}},
      {0.0, 2.0, 1.645103644151334e-04, 8.541666666666665e-04, 5.677730393897050e+01, 4.156865701091427e+04,
       {-5.494668087973534e-01, 1.626738282066969e+00},
       {3.142598213262607e+01, 9.429512419762579e+00},
       {1.140293563390125e+00, 2.059632509990578e+00},
       {-7.486492777381705e-03, 9.736719799988618e-03}},
  };
  for (const Ref& ref : refs) {
    CAPTURE(ref.rho);
    config.rho = ref.rho;
    const ScreenState s(config, ref.t_over_tau0 * tau0, 18.0 * tau0);
    const SlitBeamParams& p = s.params();
    CHECK(p.B == doctest::Approx(ref.B).epsilon(1e-10));
    CHECK(p.D == doctest::Approx(ref.D).epsilon(1e-10));
    CHECK(p.inv_R == doctest::Approx(ref.inv_R).epsilon(1e-8));
    CHECK(p.Delta == doctest::Approx(ref.Delta).epsilon(1e-10));
    CHECK(close_complex(s.psi_slit(10e-6, SlitSelector::Plus), ref.plus_10um, 1e-7));
    CHECK(close_complex(s.psi_slit(-250e-6, SlitSelector::Plus), ref.plus_m250um, 1e-7));
    CHECK(close_complex(s.psi_slit(10e-6, SlitSelector::Minus), ref.minus_10um, 1e-7));
    CHECK(close_complex(s.psi_slit(-250e-6, SlitSelector::Minus), ref.minus_m250um, 1e-7));
  }
}

TEST_CASE_FIXTURE(Fixture, "printed curvature composite differs from the derived one") {
  const SlitBeamParams good = slit_beam_params(tau0, config.tau, config, scales);
  const SlitBeamParams bad = slit_beam_params(tau0, config.tau, config, scales, CurvatureForm::AsPrinted);
  CHECK(good.B == bad.B);
  CHECK(std::abs(bad.inv_R - good.inv_R) > 1e-3 * std::abs(good.inv_R));
}

TEST_CASE_FIXTURE(Fixture, "d = 0 removes separation and linear phase") {
  config.d = 0.0;
  for (double t : {0.0, 0.3 * tau0, 2.0 * tau0}) {
    const SlitBeamParams p = slit_beam_params(t, config.tau, config, scales);
    CHECK(p.D == 0.0);
    CHECK(p.Delta == 0.0);
    CHECK(p.theta == 0.0);
  }
}

TEST_CASE_FIXTURE(Fixture, "overlap regimes at the correlation extrema") {
  const SlitBeamParams at_min = slit_beam_params(0.49 * tau0, config.tau, config, scales);
  const SlitBeamParams at_max = slit_beam_params(1.36 * tau0, config.tau, config, scales);
  CHECK(at_min.B * at_min.B > 10.0 * at_min.D * at_min.D);
  CHECK(at_max.D * at_max.D > 10.0 * at_max.B * at_max.B);
}

TEST_CASE_FIXTURE(Fixture, "all parameters finite, widths positive") {
  for (double rho : {-2.0, -1.0, 0.0, 1.0}) {
    config.rho = rho;
    for (int i = 0; i <= 50; ++i) {
      const double t = 0.1 * i * tau0;
      const SlitBeamParams p = slit_beam_params(t, config.tau, config, scales);
      CHECK(p.b > 0.0);
      CHECK(p.B > 0.0);
      for (double v : {p.inv_r, p.inv_R, p.C, p.Delta, p.D, p.theta, p.mu}) CHECK(std::isfinite(v));
    }
  }
}

TEST_CASE_FIXTURE(Fixture, "Gouy phase is continuous in t") {
  for (double rho : {-1.0, 0.0, 1.0}) {
    config.rho = rho;
    double prev = slit_beam_params(0.0, config.tau, config, scales).mu;
    double worst = 0.0;
    for (int i = 1; i <= 4000; ++i) {
      const double mu = slit_beam_params(i * 0.0025 * tau0, config.tau, config, scales).mu;
      worst = std::max(worst, std::abs(mu - prev));
      prev = mu;
    }
    CAPTURE(rho);
    CHECK(worst < 0.05);
  }
}

TEST_CASE_FIXTURE(Fixture, "relative phase between the slits is 2 Delta x") {
  const ScreenState s(config, tau0, config.tau);
  const double delta = s.params().Delta;
  for (double x : {-3e-4, -1e-5, 0.0, 2e-5, 4e-4}) {
    const Amplitude ratio = s.psi_slit(x, SlitSelector::Plus) / s.psi_slit(x, SlitSelector::Minus);
    const double diff = std::remainder(std::arg(ratio) - 2.0 * delta * x, 2.0 * std::numbers::pi);
    CHECK(std::abs(diff) < 1e-9);
  }
}

TEST_CASE_FIXTURE(Fixture, "normalization") {
  for (double t_over : {0.3, 0.49, 1.0, 1.36, 2.0}) {
    const ScreenState s(config, t_over * tau0, config.tau);
    const SlitBeamParams& p = s.params();
    const double h = std::abs(p.D) / 2.0 + 9.0 * p.B;
    CAPTURE(t_over);
    CHECK(norm_integral([&](double x) { return s.psi_slit(x, SlitSelector::Plus); }, h) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm_integral([&](double x) { return s.psi_slit(x, SlitSelector::Minus); }, h) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm_integral([&](double x) { return s.psi(x); }, h) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE_FIXTURE(Fixture, "screen density is symmetric and slit-order independent") {
  const ScreenState s(config, 0.8 * tau0, config.tau);
  const double norm = std::sqrt(s.superposition_norm());
  for (double x : {1e-6, 3.7e-5, 2e-4, 6e-4}) {
    CHECK(std::norm(s.psi(x)) == doctest::Approx(std::norm(s.psi(-x))).epsilon(1e-10));
    const Amplitude swapped = (s.psi_slit(x, SlitSelector::Minus) + s.psi_slit(x, SlitSelector::Plus)) / norm;
    CHECK(close_complex(s.psi(x), swapped, 1e-14));
  }
  CHECK(close_complex(psi_screen(1e-5, 0.8 * tau0, config.tau, config, scales), s.psi(1e-5), 1e-14));
}

TEST_CASE_FIXTURE(Fixture, "fringe spacing near the axis is pi / Delta") {
  // Overlap regime: both envelopes are nearly equal around x = 0, so the
  // density minima sit where 2 Delta x = +-pi.
  const ScreenState s(config, 0.49 * tau0, config.tau);
  const double delta = std::abs(s.params().Delta);
  const double guess = std::numbers::pi / (2.0 * delta);
  double best_x = 0.0, best = INFINITY;
  for (int i = 0; i <= 200000; ++i) {
    const double x = guess * (0.5 + i / 200000.0);
    const double v = std::norm(s.psi(x));
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  CHECK(2.0 * best_x == doctest::Approx(std::numbers::pi / delta).epsilon(1e-3));
}
