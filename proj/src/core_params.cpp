#include "dslit/core_params.hpp"

#include <cmath>

namespace dslit {

namespace {

void require_positive(double value, const char* field) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError(field, "must be finite and > 0");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  require_positive(mass, "mass");
  require_positive(sigma0, "sigma0");
  require_positive(beta, "beta");
  require_positive(tau, "tau");
  if (!std::isfinite(d) || d < 0.0) throw ValidationError("d", "must be finite and >= 0");
  if (!std::isfinite(rho)) throw ValidationError("rho", "must be finite");
  if (lambda_dB) require_positive(*lambda_dB, "lambda_dB");
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("t", "must be finite and >= 0");
}

DerivedScales derive_scales(const ExperimentConfig& config) {
  config.validate();
  DerivedScales scales;
  scales.tau0 = config.mass * config.sigma0 * config.sigma0 / kConstants.hbar;
  if (config.lambda_dB) {
    scales.vz = kConstants.planck_h / (config.mass * *config.lambda_dB);
  }
  return scales;
}

MomentSet initial_moments(const ExperimentConfig& config) {
  config.validate();
  const double hbar = kConstants.hbar;
  MomentSet m;
  m.sigma_xx = config.sigma0 / std::sqrt(2.0);
  m.sigma_pp = std::sqrt(1.0 + config.rho * config.rho) * hbar / (std::sqrt(2.0) * config.sigma0);
  m.sigma_xp = hbar * config.rho / 2.0;
  return m;
}

ExperimentConfig neutron_config() {
  ExperimentConfig c;
  c.mass = 1.67e-27;
  c.sigma0 = 7.8e-6;
  c.beta = 7.8e-6;
  c.d = 125e-6;
  c.rho = -1.0;
  c.lambda_dB = 2e-9;
  const double tau0 = c.mass * c.sigma0 * c.sigma0 / kConstants.hbar;
  c.tau = 18.0 * tau0;
  c.t = 0.0;
  return c;
}

}  // namespace dslit
