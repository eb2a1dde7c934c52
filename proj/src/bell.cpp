#include "dslit/bell.hpp"

#include <algorithm>
#include <cmath>

namespace dslit {

void BellSettings::validate() const {
  if (!std::isfinite(x1)) throw ValidationError("bell.x1", "must be finite");
  if (!std::isfinite(k1)) throw ValidationError("bell.k1", "must be finite");
  if (!std::isfinite(scaling) || scaling <= 0.0) throw ValidationError("bell.scaling", "must be > 0");
}

double bell_combine(BellForm form, double e_x1k1, double e_xk1, double e_x1k, double e_xk) {
  switch (form) {
    case BellForm::AsPrinted:
      return std::abs(e_x1k1 + e_xk1) + std::abs(e_x1k - e_xk);
    case BellForm::StandardCHSH:
      return std::abs(e_x1k1 + e_x1k + e_xk1 - e_xk);
  }
  return 0.0;
}

double bell_value(const ScreenState& state, const BellSettings& settings, PhaseSpacePoint pt) {
  const double s = settings.scaling;
  return bell_combine(settings.form, s * wigner_point(state, {settings.x1, settings.k1}),
                      s * wigner_point(state, {pt.x, settings.k1}),
                      s * wigner_point(state, {settings.x1, pt.k}), s * wigner_point(state, pt));
}

GridSpec auto_bell_grid(const ScreenState& state, const BellSettings& settings, std::size_t nx,
                        std::size_t nk) {
  const SlitBeamParams& p = state.params();
  const double c = state.chirp();
  const double q_half = std::abs(p.Delta) + 5.0 / p.B;
  const double support = std::abs(p.D) / 2.0 + 5.0 * p.B;

  double x_lo = -support;
  double x_hi = support;
  if (c != 0.0) {
    // Crossing of the line k = k1 with the band |k - c x| <= q_half ...
    const double a = (settings.k1 - q_half) / c;
    const double b = (settings.k1 + q_half) / c;
    // ... and the x range over which E(x1,k) and E(x,k) can both be nonzero.
    const double reach = 2.0 * q_half / std::abs(c);
    const double lo = std::min({a, b, settings.x1 - reach});
    const double hi = std::max({a, b, settings.x1 + reach});
    if (lo < support && hi > -support) {
      x_lo = std::max(lo, -support);
      x_hi = std::min(hi, support);
    }
  }
  double k_lo = std::min(c * x_lo, c * x_hi) - q_half;
  double k_hi = std::max(c * x_lo, c * x_hi) + q_half;
  k_lo = std::min(k_lo, settings.k1 - q_half);
  k_hi = std::max(k_hi, settings.k1 + q_half);

  GridSpec spec;
  spec.x_min = x_lo;
  spec.x_max = x_hi;
  spec.k_min = k_lo;
  spec.k_max = k_hi;
  spec.nx = nx;
  spec.nk = nk;
  return spec;
}

namespace {

struct Peak {
  double value;
  PhaseSpacePoint at;
};

// Evaluates the combination on spec, caching E(x1,k1) and the row values
// E(x_i, k1).
PhaseSpaceField scan_field(const ScreenState& state, const BellSettings& settings, const GridSpec& spec) {
  const double s = settings.scaling;
  const double e11 = s * wigner_point(state, {settings.x1, settings.k1});
  PhaseSpaceField field{spec, std::vector<double>(spec.nx * spec.nk)};
  parallel_for(spec.nx, [&](std::size_t i) {
    const double x = spec.x(i);
    const double e_xk1 = s * wigner_point(state, {x, settings.k1});
    for (std::size_t j = 0; j < spec.nk; ++j) {
      const double k = spec.k(i, j);
      field.values[i * spec.nk + j] =
          bell_combine(settings.form, e11, e_xk1, s * wigner_point(state, {settings.x1, k}),
                       s * wigner_point(state, {x, k}));
    }
  });
  return field;
}

Peak field_peak(const PhaseSpaceField& field) {
  const auto it = std::max_element(field.values.begin(), field.values.end());
  const auto idx = static_cast<std::size_t>(it - field.values.begin());
  return {*it, field.spec.point(idx / field.spec.nk, idx % field.spec.nk)};
}

}  // namespace

BellScanResult bell_scan(const ScreenState& state, const BellSettings& settings,
                         const std::optional<GridSpec>& spec_in) {
  settings.validate();
  const GridSpec spec = spec_in ? *spec_in : auto_bell_grid(state, settings);
  spec.validate();

  BellScanResult r;
  r.field = scan_field(state, settings, spec);
  Peak best = field_peak(r.field);
  r.grid_max_value = best.value;

  double half_x = 0.5 * (spec.x_max - spec.x_min);
  double half_k = 0.5 * (spec.k_max - spec.k_min);
  for (int round = 0; round < 2; ++round) {
    half_x /= 5.0;
    half_k /= 5.0;
    GridSpec zoom = spec;
    const double k_offset = best.at.k - spec.k_shear * best.at.x;
    zoom.x_min = best.at.x - half_x;
    zoom.x_max = best.at.x + half_x;
    zoom.k_min = k_offset - half_k;
    zoom.k_max = k_offset + half_k;
    const Peak p = field_peak(scan_field(state, settings, zoom));
    if (p.value > best.value) best = p;
  }
  r.argmax = best.at;
  r.max_value = bell_value(state, settings, best.at);

  r.violation_mask.resize(r.field.values.size());
  std::size_t count = 0;
  for (std::size_t n = 0; n < r.field.values.size(); ++n) {
    const bool v = r.field.values[n] > kLocalBound;
    r.violation_mask[n] = v ? 1 : 0;
    count += v ? 1 : 0;
  }
  r.violation_fraction = static_cast<double>(count) / static_cast<double>(r.field.values.size());
  return r;
}

}  // namespace dslit
