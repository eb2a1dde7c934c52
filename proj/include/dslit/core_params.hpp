#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace dslit {

/// CODATA 2018 exact value of the Planck constant.
struct PhysicalConstants {
  double planck_h = 6.62607015e-34;  // J s
  double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);
};

inline constexpr PhysicalConstants kConstants{};

/// Raised when a configuration or grid fails validation. `field()` names the
/// offending input so front ends can report it verbatim.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Physical inputs of the double-slit model, SI units throughout.
///
/// `t` is the source-to-slit time and `tau` the slit-to-screen time. Routines
/// that scan over t take it as an explicit argument and ignore the field.
struct ExperimentConfig {
  double mass = 1.67e-27;      // kg
  double sigma0 = 7.8e-6;      // m, initial transverse width
  double beta = 7.8e-6;        // m, Gaussian slit width
  double d = 125e-6;           // m, slit separation
  double rho = -1.0;           // initial x-p correlation parameter
  std::optional<double> lambda_dB = 2e-9;  // m
  double tau = 0.0;            // s
  double t = 0.0;              // s

  /// Throws ValidationError for the first violated invariant.
  void validate() const;
};

struct DerivedScales {
  double tau0 = 0.0;            // m sigma0^2 / hbar
  std::optional<double> vz;     // h / (m lambda_dB)
};

/// Second moments of a state. sigma_xx and sigma_pp are standard deviations,
/// sigma_xp is the symmetrized covariance <xp+px>/2 - <x><p>.
struct MomentSet {
  double sigma_xx = 0.0;  // m
  double sigma_pp = 0.0;  // kg m/s
  double sigma_xp = 0.0;  // J s
};

DerivedScales derive_scales(const ExperimentConfig& config);

/// Closed-form moments of the correlated initial Gaussian.
MomentSet initial_moments(const ExperimentConfig& config);

/// The configuration used for the neutron double-slit numbers: m = 1.67e-27 kg,
/// sigma0 = beta = 7.8 um, d = 125 um, lambda = 2 nm, rho = -1, tau = 18 tau0.
ExperimentConfig neutron_config();

}  // namespace dslit
