#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dslit/wigner.hpp"

namespace dslit {

/// AsPrinted: |E(x1,k1) + E(x,k1)| + |E(x1,k) - E(x,k)|.
/// StandardCHSH: |E(x1,k1) + E(x1,k) + E(x,k1) - E(x,k)|.
enum class BellForm { AsPrinted, StandardCHSH };

struct BellSettings {
  double x1 = 1e-6;  // m
  double k1 = 1e3;   // 1/m
  /// E = scaling * W. pi turns W(x, k) into the displaced-parity expectation.
  double scaling = 3.141592653589793;
  BellForm form = BellForm::AsPrinted;

  void validate() const;
};

/// Combines the four correlation values. Exposed so callers can reuse cached
/// fixed-point values.
double bell_combine(BellForm form, double e_x1k1, double e_xk1, double e_x1k, double e_xk);

double bell_value(const ScreenState& state, const BellSettings& settings, PhaseSpacePoint pt);

struct BellScanResult {
  PhaseSpaceField field;
  double grid_max_value = 0.0;
  double max_value = 0.0;  // after zoom refinement; equals bell_value at argmax
  PhaseSpacePoint argmax;
  std::vector<std::uint8_t> violation_mask;  // 1 where the field exceeds 2, row-major
  double violation_fraction = 0.0;
};

/// Rectangle containing every point where the combination can exceed 2:
/// strict exceedance needs E(x,k1) or E(x1,k) to be non-negligible, which
/// confines x to where the Wigner support crosses k = k1 (and to within the
/// support width of x1), and k to the chirp band over that x window.
GridSpec auto_bell_grid(const ScreenState& state, const BellSettings& settings, std::size_t nx = 512,
                        std::size_t nk = 512);

/// Grid scan followed by two rounds of 5x zoom around the running argmax.
BellScanResult bell_scan(const ScreenState& state, const BellSettings& settings,
                         const std::optional<GridSpec>& spec = std::nullopt);

inline constexpr double kLocalBound = 2.0;

}  // namespace dslit
