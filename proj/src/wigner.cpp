#include "dslit/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dslit {

void GridSpec::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max)) {
    throw ValidationError("grid.x", "require finite x_min < x_max");
  }
  if (!(std::isfinite(k_min) && std::isfinite(k_max) && k_min < k_max)) {
    throw ValidationError("grid.k", "require finite k_min < k_max");
  }
  if (nx < 2) throw ValidationError("grid.nx", "must be >= 2");
  if (nk < 2) throw ValidationError("grid.nk", "must be >= 2");
  if (!std::isfinite(k_shear)) throw ValidationError("grid.k_shear", "must be finite");
}

WignerTerms wigner_terms(const ScreenState& state, PhaseSpacePoint pt) {
  const SlitBeamParams& p = state.params();
  const double B2 = p.B * p.B;
  const double q = pt.k - state.chirp() * pt.x;
  const double scale = 1.0 / (std::numbers::pi * state.superposition_norm());

  const double xp = pt.x + p.D / 2.0;
  const double xm = pt.x - p.D / 2.0;
  const double qp = q - p.Delta;
  const double qm = q + p.Delta;

  WignerTerms w;
  w.slit_plus = scale * std::exp(-xp * xp / B2 - qp * qp * B2);
  w.slit_minus = scale * std::exp(-xm * xm / B2 - qm * qm * B2);
  w.interference = 2.0 * scale * std::exp(-pt.x * pt.x / B2 - q * q * B2) *
                   std::cos(q * p.D + 2.0 * p.Delta * pt.x);
  return w;
}

double wigner_point(PhaseSpacePoint pt, double t, double tau, const ExperimentConfig& config,
                    const DerivedScales&) {
  return wigner_point(ScreenState(config, t, tau), pt);
}

GridSpec auto_wigner_grid(const ScreenState& state, std::size_t nx, std::size_t nk) {
  const SlitBeamParams& p = state.params();
  const double x_half = std::abs(p.D) / 2.0 + 5.0 * p.B;
  const double q_half = std::abs(p.Delta) + 5.0 / p.B;
  GridSpec spec;
  spec.x_min = -x_half;
  spec.x_max = x_half;
  spec.k_min = -q_half;
  spec.k_max = q_half;
  spec.nx = nx;
  spec.nk = nk;
  spec.k_shear = state.chirp();
  return spec;
}

PhaseSpaceField wigner_grid(const ScreenState& state, const GridSpec& spec) {
  return sample_field(spec, [&state](PhaseSpacePoint pt) { return wigner_point(state, pt); });
}

PhaseSpaceField wigner_grid(const ScreenState& state) {
  return wigner_grid(state, auto_wigner_grid(state));
}

NegativityReport negativity(const PhaseSpaceField& field) {
  const GridSpec& spec = field.spec;
  const double cell = spec.dx() * spec.dk();
  NegativityReport r;
  r.min_value = std::numeric_limits<double>::infinity();
  r.max_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.nx; ++i) {
    const double wi = trapezoid_weight(i, spec.nx);
    for (std::size_t j = 0; j < spec.nk; ++j) {
      const double v = field.at(i, j);
      const double w = wi * trapezoid_weight(j, spec.nk) * cell;
      r.total_integral += w * v;
      if (v < 0.0) r.negative_volume -= w * v;
      if (v < r.min_value) {
        r.min_value = v;
        r.min_location = spec.point(i, j);
      }
      if (v > r.max_value) r.max_value = v;
    }
  }
  return r;
}

std::vector<double> position_marginal(const PhaseSpaceField& field) {
  const GridSpec& spec = field.spec;
  std::vector<double> out(spec.nx, 0.0);
  for (std::size_t i = 0; i < spec.nx; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.nk; ++j) sum += trapezoid_weight(j, spec.nk) * field.at(i, j);
    out[i] = sum * spec.dk();
  }
  return out;
}

double momentum_marginal(const ScreenState& state, double k, std::size_t n) {
  const SlitBeamParams& p = state.params();
  const double x_half = std::abs(p.D) / 2.0 + 8.0 * p.B;
  if (n == 0) {
    // Resolve the ridge width along x and the x-fringe period with >= 16 samples.
    const double c = state.chirp();
    const double ridge = 1.0 / std::sqrt(1.0 / (p.B * p.B) + c * c * p.B * p.B);
    const double slope = std::abs(2.0 * p.Delta - c * p.D);
    const double period = slope > 0.0 ? 2.0 * std::numbers::pi / slope : ridge;
    const double step = std::min(ridge, period) / 16.0;
    n = std::max<std::size_t>(1001, static_cast<std::size_t>(std::ceil(2.0 * x_half / step)) + 1);
  }
  const double dx = 2.0 * x_half / static_cast<double>(n - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -x_half + static_cast<double>(i) * dx;
    sum += trapezoid_weight(i, n) * wigner_point(state, {x, k});
  }
  return sum * dx;
}

}  // namespace dslit
