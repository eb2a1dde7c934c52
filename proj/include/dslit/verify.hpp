#pragma once

#include <string>
#include <vector>

#include "dslit/propagation.hpp"

namespace dslit {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double measured = 0.0;
  bool passed = false;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Quick;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// JSON text: {"level": ..., "passed": ..., "checks": [...]}.
  std::string to_json() const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  /// Closed form under test. AsPrinted is the known-bad negative control.
  CurvatureForm curvature = CurvatureForm::Derived;
};

/// Cross-validates the closed forms against the quadrature oracle.
///   quick: the configured rho at t = tau0.
///   full:  rho in {-1, 0, 1} x t in {0.3, 1, 2} tau0, plus initial-state
///          identities and auto-grid normalization.
/// tau is taken from the configuration.
VerifyReport run_verification(const ExperimentConfig& config, const VerifyOptions& options);

/// Deterministic low-discrepancy points in [0,1)^2 (additive recurrence on the
/// plastic number), used wherever "random" sample points are needed.
std::vector<std::pair<double, double>> quasi_random_unit_points(std::size_t n);

}  // namespace dslit
