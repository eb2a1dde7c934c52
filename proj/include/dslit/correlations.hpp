#pragma once

#include <optional>
#include <vector>

#include "dslit/propagation.hpp"

namespace dslit {

/// Position-momentum covariance at the screen in J s, from the beam
/// parameters (mean x and p vanish for the symmetric double slit).
double sigma_xp(const ScreenState& state);
double sigma_xp(double t, double tau, const ExperimentConfig& config, const DerivedScales& scales);

struct SigmaXpSample {
  double t = 0.0;         // s
  double sigma_xp = 0.0;  // J s
};

struct SigmaXpCurve {
  double tau = 0.0;
  std::vector<SigmaXpSample> samples;  // strictly increasing t
};

/// n >= 2 uniform samples over [t_lo, t_hi].
SigmaXpCurve sigma_xp_curve(double tau, double t_lo, double t_hi, std::size_t n,
                            const ExperimentConfig& config);

struct Extremum {
  double t = 0.0;
  double sigma_xp = 0.0;
};

struct ExtremaResult {
  std::optional<Extremum> minimum;
  std::optional<Extremum> maximum;
  double bracket_tolerance = 0.0;  // s
};

struct ExtremaOptions {
  std::size_t coarse_samples = 400;
  double tolerance_tau0 = 1e-4;  // golden-section bracket width in units of tau0
};

/// Interior extrema of sigma_xp(t) at fixed tau. A coarse scan brackets sign
/// changes of the discrete derivative; each bracket is refined by golden
/// section. When several extrema of one kind exist the lowest minimum and the
/// highest maximum are reported.
ExtremaResult find_extrema(double tau, double t_lo, double t_hi, const ExperimentConfig& config,
                           const ExtremaOptions& options = {});

struct OverlapRatios {
  double b2_over_d2 = 0.0;
  double d2_over_b2 = 0.0;
};

/// B^2/D^2 and its inverse. Throws std::domain_error when D = 0.
OverlapRatios overlap_report(const ScreenState& state);

}  // namespace dslit
