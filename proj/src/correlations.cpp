#include "dslit/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dslit/parallel.hpp"

namespace dslit {

namespace {

void validate_range(double t_lo, double t_hi) {
  if (!(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo >= 0.0 && t_lo < t_hi)) {
    throw ValidationError("t_range", "require 0 <= t_lo < t_hi");
  }
}

template <typename Fn>
double golden_section_min(Fn&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double sigma_xp(const ScreenState& state) {
  const SlitBeamParams& p = state.params();
  const double m = state.config().mass;
  const double B2 = p.B * p.B;
  const double E = state.overlap_exponent();
  return m * B2 * p.inv_R / 2.0 + m * p.D * p.D * p.inv_R / (4.0 + 4.0 * std::exp(-E)) -
         kConstants.hbar * p.Delta * p.D / 2.0 -
         m * p.Delta * p.Delta * B2 * B2 * p.inv_R / (1.0 + std::exp(E));
}

double sigma_xp(double t, double tau, const ExperimentConfig& config, const DerivedScales&) {
  return sigma_xp(ScreenState(config, t, tau));
}

SigmaXpCurve sigma_xp_curve(double tau, double t_lo, double t_hi, std::size_t n,
                            const ExperimentConfig& config) {
  validate_range(t_lo, t_hi);
  if (n < 2) throw ValidationError("n", "must be >= 2");
  SigmaXpCurve curve{tau, std::vector<SigmaXpSample>(n)};
  const double step = (t_hi - t_lo) / static_cast<double>(n - 1);
  parallel_for(n, [&](std::size_t i) {
    const double t = i + 1 == n ? t_hi : t_lo + static_cast<double>(i) * step;
    curve.samples[i] = {t, sigma_xp(ScreenState(config, t, tau))};
  });
  return curve;
}

ExtremaResult find_extrema(double tau, double t_lo, double t_hi, const ExperimentConfig& config,
                           const ExtremaOptions& options) {
  const DerivedScales scales = derive_scales(config);
  const std::size_t n = std::max<std::size_t>(options.coarse_samples, 400);
  const SigmaXpCurve coarse = sigma_xp_curve(tau, t_lo, t_hi, n, config);
  const auto& s = coarse.samples;

  ExtremaResult result;
  result.bracket_tolerance = options.tolerance_tau0 * scales.tau0;
  auto value = [&](double t) { return sigma_xp(ScreenState(config, t, tau)); };

  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double left = s[i].sigma_xp - s[i - 1].sigma_xp;
    const double right = s[i + 1].sigma_xp - s[i].sigma_xp;
    if (!(left * right < 0.0)) continue;
    const bool is_max = right - left < 0.0;
    const double a = s[i - 1].t;
    const double b = s[i + 1].t;
    const double t_star = is_max
                              ? golden_section_min([&](double t) { return -value(t); }, a, b,
                                                   result.bracket_tolerance)
                              : golden_section_min(value, a, b, result.bracket_tolerance);
    const Extremum e{t_star, value(t_star)};
    if (is_max) {
      if (!result.maximum || e.sigma_xp > result.maximum->sigma_xp) result.maximum = e;
    } else {
      if (!result.minimum || e.sigma_xp < result.minimum->sigma_xp) result.minimum = e;
    }
  }
  return result;
}

OverlapRatios overlap_report(const ScreenState& state) {
  const SlitBeamParams& p = state.params();
  if (p.D == 0.0) throw std::domain_error("overlap ratios are undefined when D = 0 (d = 0)");
  const double B2 = p.B * p.B;
  const double D2 = p.D * p.D;
  return {B2 / D2, D2 / B2};
}

}  // namespace dslit
