#pragma once

#include <complex>

#include "dslit/core_params.hpp"

namespace dslit {

using Amplitude = std::complex<double>;  // m^(-1/2)

/// Left slit 1(+) is the transmission F(x + d/2), right slit 2(-) is F(x - d/2).
enum class SlitSelector { Plus, Minus };

/// Which expression is used for the composite C entering the screen
/// curvature. `AsPrinted` keeps the dimensionally inconsistent 2 tau0^2
/// sigma0^2 / beta term and exists only as a negative control for verification.
enum class CurvatureForm { Derived, AsPrinted };

/// Beam quantities of the single-slit wave at the screen. Curvature radii are
/// stored inverted since r and R diverge at waists.
struct SlitBeamParams {
  double b = 0.0;      // m, free beam width at the slits
  double inv_r = 0.0;  // 1/s, free wavefront curvature (r carries time units)
  double B = 0.0;      // m, beam width at the screen
  double inv_R = 0.0;  // 1/s, screen curvature; phase is m x^2 / (2 hbar R)
  double C = 0.0;      // s^2
  double Delta = 0.0;  // 1/m, linear phase coefficient
  double D = 0.0;      // m, packet separation
  double theta = 0.0;  // rad
  double mu = 0.0;     // rad, Gouy phase
};

/// b(t) for the correlated Gaussian, t >= 0.
double free_beam_width(double t, const ExperimentConfig& config, const DerivedScales& scales);

/// 1/r(t). Finite everywhere, zero at the contractive waist t = -rho tau0/(1+rho^2).
double free_inv_curvature(double t, const ExperimentConfig& config, const DerivedScales& scales);

SlitBeamParams slit_beam_params(double t, double tau, const ExperimentConfig& config,
                                const DerivedScales& scales,
                                CurvatureForm form = CurvatureForm::Derived);

/// Wave state at the screen for one (t, tau) pair. Precomputes the beam
/// parameters so that point evaluations are cheap; immutable after
/// construction.
class ScreenState {
 public:
  ScreenState(const ExperimentConfig& config, double t, double tau,
              CurvatureForm form = CurvatureForm::Derived);

  const ExperimentConfig& config() const noexcept { return config_; }
  const DerivedScales& scales() const noexcept { return scales_; }
  const SlitBeamParams& params() const noexcept { return params_; }
  double t() const noexcept { return t_; }
  double tau() const noexcept { return tau_; }

  /// m / (hbar R), slope of the chirp line k = chirp * x in phase space (1/m^2).
  double chirp() const noexcept { return chirp_; }
  /// D^2/(4B^2) + Delta^2 B^2, the overlap exponent of the two slit waves.
  double overlap_exponent() const noexcept { return overlap_exponent_; }
  /// 2 + 2 exp(-overlap_exponent), the squared norm of psi_1 + psi_2.
  double superposition_norm() const noexcept { return superposition_norm_; }

  Amplitude psi_slit(double x, SlitSelector slit) const;
  Amplitude psi(double x) const;

 private:
  ExperimentConfig config_;
  DerivedScales scales_;
  double t_;
  double tau_;
  SlitBeamParams params_;
  double chirp_;
  double overlap_exponent_;
  double superposition_norm_;
  double envelope_norm_;
  double global_phase_;
};

Amplitude psi_slit(double x, double t, double tau, SlitSelector slit, const ExperimentConfig& config,
                   const DerivedScales& scales);

/// Normalized superposition (psi_1 + psi_2) / sqrt(2 + 2 exp(-D^2/4B^2 - Delta^2 B^2)).
Amplitude psi_screen(double x, double t, double tau, const ExperimentConfig& config,
                     const DerivedScales& scales);

}  // namespace dslit
