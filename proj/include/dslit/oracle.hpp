#pragma once

// Independent numerical ground truth. Nothing here calls the closed-form beam
// parameters: wavefunctions come from direct quadrature of the propagation
// integral, Wigner values from quadrature of the Wigner transform.

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dslit/core_params.hpp"
#include "dslit/propagation.hpp"
#include "dslit/wigner.hpp"

namespace dslit::oracle {

struct UniformGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;

  void validate() const;
  double step() const { return (x_max - x_min) / static_cast<double>(n - 1); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * step(); }
};

struct SampledWavefunction {
  UniformGrid grid;
  std::vector<std::complex<double>> values;
  double t = 0.0;
  double tau = 0.0;

  /// sum |psi|^2 dx
  double norm() const;
};

/// Thrown when a requested quadrature step cannot resolve the chirped kernel.
class NyquistError : public std::runtime_error {
 public:
  NyquistError(double requested, double required);
  double required_step() const noexcept { return required_; }

 private:
  double required_;
};

enum class InnerIntegral {
  Numeric,   // trapezoid over the source coordinate
  Gaussian,  // exact complex-Gaussian reduction of the source integral
};

struct PropagationOptions {
  InnerIntegral inner = InnerIntegral::Numeric;
  /// Quadrature step for the source and slit coordinates; 0 picks the chirp
  /// sampling rule. A step coarser than the rule is refused.
  double quadrature_step = 0.0;
  /// Extra refinement applied on top of the rule (1 = rule as is).
  double refinement = 1.0;
};

/// Which slits are open; nullopt means both.
using SlitChoice = std::optional<SlitSelector>;

/// psi_0 sampled on a grid.
SampledWavefunction sample_initial_state(const ExperimentConfig& config, const UniformGrid& grid);

/// Nested quadrature of the source -> slit -> screen propagation integral with
/// Gaussian slit transmission. The result is normalized so that norm() = 1.
SampledWavefunction propagate_numeric(const ExperimentConfig& config, double t, double tau,
                                      SlitChoice slits, const UniformGrid& screen,
                                      const PropagationOptions& options = {});

/// Free propagation of psi_0 for time t (no slits).
SampledWavefunction propagate_free_numeric(const ExperimentConfig& config, double t,
                                           const UniformGrid& screen,
                                           const PropagationOptions& options = {});

/// Largest admissible step for a chirp exp(i m x^2 / (2 hbar T)) sampled over
/// an argument span: pi hbar T / (m span) / 4.
double chirp_step(double mass, double time, double span);

/// 4-point Lagrange interpolation; zero outside the grid.
std::complex<double> interpolate_cubic(const SampledWavefunction& psi, double x);

struct WignerSamples {
  std::vector<double> values;
  double max_imag_residue = 0.0;
};

/// Trapezoid quadrature of W(x,k) = 1/(2pi) int dy e^{-iky} psi*(x-y/2) psi(x+y/2)
/// with psi interpolated cubically. Throws std::out_of_range for points
/// outside the grid and std::runtime_error if the imaginary residue exceeds
/// 1e-8.
WignerSamples wigner_numeric(const SampledWavefunction& psi, const std::vector<PhaseSpacePoint>& pts);

struct MomentReport {
  MomentSet moments;
  double mean_x = 0.0;
  double mean_p = 0.0;
  /// Largest boundary magnitude relative to the peak; above 1e-8 the grid
  /// does not cover the support and `covers_support` is false.
  double boundary_ratio = 0.0;
  bool covers_support = true;
};

/// Operator moments of a sampled wavefunction, p = -i hbar d/dx via
/// 8th-order central differences.
MomentReport moments_numeric(const SampledWavefunction& psi);

/// Phase-space moments of a Wigner field, 2-D trapezoid, p = hbar k.
MomentReport moments_numeric(const PhaseSpaceField& field);

/// |FT psi|^2 / (2 pi) at wavenumber k: the momentum density in k variables.
double momentum_density_numeric(const SampledWavefunction& psi, double k);

struct ConvergenceLevel {
  double step = 0.0;
  double value = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double extrapolated = 0.0;
  double estimated_error = 0.0;
  double observed_order = 0.0;
  bool monotone = true;
};

/// Evaluates f at step, step/2, ..., (levels entries) and applies Richardson
/// extrapolation with the observed order. Non-monotone sequences are flagged
/// and not extrapolated. Requires levels >= 3.
ConvergenceReport convergence_study(const std::function<double(double)>& f, double step,
                                    std::size_t levels);

}  // namespace dslit::oracle
