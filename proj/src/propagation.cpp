#include "dslit/propagation.hpp"

#include <cmath>
#include <numbers>

namespace dslit {

namespace {

// t^2 + tau0^2 + 2 t tau0 rho + t^2 rho^2
double spread_polynomial(double t, double tau0, double rho) {
  return t * t + tau0 * tau0 + 2.0 * t * tau0 * rho + t * t * rho * rho;
}

}  // namespace

double free_beam_width(double t, const ExperimentConfig& config, const DerivedScales& scales) {
  const double tau0 = scales.tau0;
  return config.sigma0 / tau0 * std::sqrt(spread_polynomial(t, tau0, config.rho));
}

double free_inv_curvature(double t, const ExperimentConfig& config, const DerivedScales& scales) {
  const double tau0 = scales.tau0;
  const double rho = config.rho;
  return (t * (1.0 + rho * rho) + rho * tau0) / spread_polynomial(t, tau0, rho);
}

SlitBeamParams slit_beam_params(double t, double tau, const ExperimentConfig& config,
                                const DerivedScales& scales, CurvatureForm form) {
  const double hbar = kConstants.hbar;
  const double m = config.mass;
  const double tau0 = scales.tau0;
  const double rho = config.rho;
  const double s0 = config.sigma0;
  const double s02 = s0 * s0;
  const double beta2 = config.beta * config.beta;
  const double d = config.d;

  SlitBeamParams p;
  const double poly = spread_polynomial(t, tau0, rho);
  p.b = free_beam_width(t, config, scales);
  p.inv_r = free_inv_curvature(t, config, scales);

  const double b2 = p.b * p.b;
  const double width_sum = 1.0 / beta2 + 1.0 / b2;
  const double phase_sum = m / hbar * (1.0 / tau + p.inv_r);
  const double numerator = width_sum * width_sum + phase_sum * phase_sum;
  const double free_screen = m / (hbar * tau);

  const double B2 = numerator / (free_screen * free_screen * width_sum);
  p.B = std::sqrt(B2);

  const double last = form == CurvatureForm::Derived ? 2.0 * tau0 * tau0 * s02 / beta2
                                                     : 2.0 * tau0 * tau0 * s02 / config.beta;
  p.C = tau0 * tau0 + t * tau0 * tau0 / tau + tau0 * tau0 * rho * rho +
        tau0 * tau0 * tau0 * rho / tau + t * tau0 * tau0 * rho * rho / tau + last;
  p.inv_R = (1.0 / (beta2 * beta2) + p.C / (s02 * s02 * poly)) / (tau * numerator);

  p.Delta = tau * s02 * d / (2.0 * tau0 * beta2 * B2);
  p.D = d * (1.0 + tau * p.inv_r) / (1.0 + beta2 / b2);
  p.theta = m * d * d * (1.0 / tau + p.inv_r) / (8.0 * hbar * beta2 * beta2 * numerator);

  // Gouy phase: -1/2 arg of the product of the two propagation factors. Each
  // factor has a positive imaginary part, so the product's argument lies in
  // (0, 2pi) and is continuous in t.
  const double re = tau0 - t * tau * s02 / (tau0 * beta2) + rho * (t + tau);
  const double im = t + tau * (1.0 + s02 / beta2 + t * hbar * rho / (m * beta2));
  double arg = std::atan2(im, re);
  if (arg < 0.0) arg += 2.0 * std::numbers::pi;
  p.mu = -0.5 * arg;
  return p;
}

ScreenState::ScreenState(const ExperimentConfig& config, double t, double tau, CurvatureForm form)
    : config_(config), scales_(derive_scales(config)), t_(t), tau_(tau) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("t", "must be finite and >= 0");
  if (!std::isfinite(tau) || tau <= 0.0) throw ValidationError("tau", "must be finite and > 0");
  params_ = slit_beam_params(t, tau, config_, scales_, form);
  const double B = params_.B;
  chirp_ = config_.mass * params_.inv_R / kConstants.hbar;
  overlap_exponent_ = params_.D * params_.D / (4.0 * B * B) + params_.Delta * params_.Delta * B * B;
  superposition_norm_ = 2.0 + 2.0 * std::exp(-overlap_exponent_);
  envelope_norm_ = 1.0 / std::sqrt(B * std::sqrt(std::numbers::pi));
  global_phase_ = params_.theta + params_.mu;
}

Amplitude ScreenState::psi_slit(double x, SlitSelector slit) const {
  const double sign = slit == SlitSelector::Plus ? 1.0 : -1.0;
  const double B = params_.B;
  const double shifted = x + sign * params_.D / 2.0;
  const double envelope = envelope_norm_ * std::exp(-shifted * shifted / (2.0 * B * B));
  const double phase = 0.5 * chirp_ * x * x + sign * params_.Delta * x + global_phase_;
  return std::polar(envelope, phase);
}

Amplitude ScreenState::psi(double x) const {
  return (psi_slit(x, SlitSelector::Plus) + psi_slit(x, SlitSelector::Minus)) /
         std::sqrt(superposition_norm_);
}

Amplitude psi_slit(double x, double t, double tau, SlitSelector slit, const ExperimentConfig& config,
                   const DerivedScales&) {
  return ScreenState(config, t, tau).psi_slit(x, slit);
}

Amplitude psi_screen(double x, double t, double tau, const ExperimentConfig& config,
                     const DerivedScales&) {
  return ScreenState(config, t, tau).psi(x);
}

}  // namespace dslit
