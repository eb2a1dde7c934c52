#pragma once

#include <cstddef>
#include <vector>

#include "dslit/propagation.hpp"

namespace dslit {

struct PhaseSpacePoint {
  double x = 0.0;  // m
  double k = 0.0;  // 1/m, p = hbar k
};

/// Sampling lattice in phase space. Row i sits at x_i, uniformly spaced on
/// [x_min, x_max]; column j sits at k_min + j dk + k_shear * x_i. With
/// k_shear = 0 this is the plain rectangle; a nonzero shear aligns the k axis
/// with a chirped ridge. The shear has unit Jacobian, so dx dk is unchanged.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  double k_min = 0.0;
  double k_max = 0.0;
  std::size_t nx = 512;
  std::size_t nk = 512;
  double k_shear = 0.0;  // 1/m^2

  void validate() const;
  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dk() const { return (k_max - k_min) / static_cast<double>(nk - 1); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double k(std::size_t i, std::size_t j) const {
    return k_min + static_cast<double>(j) * dk() + k_shear * x(i);
  }
  PhaseSpacePoint point(std::size_t i, std::size_t j) const { return {x(i), k(i, j)}; }
};

/// Real values on a GridSpec, row-major: values[i * nk + j] holds (x_i, k_ij).
struct PhaseSpaceField {
  GridSpec spec;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * spec.nk + j]; }
};

struct NegativityReport {
  double min_value = 0.0;
  PhaseSpacePoint min_location;
  double max_value = 0.0;
  double negative_volume = 0.0;  // integral of (|W| - W) / 2
  double total_integral = 0.0;
};

/// The three pieces of the screen Wigner function.
struct WignerTerms {
  double slit_plus = 0.0;
  double slit_minus = 0.0;
  double interference = 0.0;
  double total() const { return slit_plus + slit_minus + interference; }
};

WignerTerms wigner_terms(const ScreenState& state, PhaseSpacePoint pt);

/// Closed-form W(x, k) of the normalized screen superposition; integrates to
/// one over dx dk.
inline double wigner_point(const ScreenState& state, PhaseSpacePoint pt) {
  return wigner_terms(state, pt).total();
}
double wigner_point(PhaseSpacePoint pt, double t, double tau, const ExperimentConfig& config,
                    const DerivedScales& scales);

/// Sheared grid covering the support: x in +-(|D|/2 + 5B), k within
/// +-(|Delta| + 5/B) of the chirp line k = m x / (hbar R).
GridSpec auto_wigner_grid(const ScreenState& state, std::size_t nx = 512, std::size_t nk = 512);

/// Evaluates any f(PhaseSpacePoint) on a grid, rows in parallel.
template <typename Fn>
PhaseSpaceField sample_field(const GridSpec& spec, Fn&& fn);

PhaseSpaceField wigner_grid(const ScreenState& state, const GridSpec& spec);
PhaseSpaceField wigner_grid(const ScreenState& state);  // auto grid, 512 x 512

/// Trapezoid-rule metrics of a field.
NegativityReport negativity(const PhaseSpaceField& field);

/// Integral of the field over k at each grid row (position marginal).
std::vector<double> position_marginal(const PhaseSpaceField& field);

/// Integral of the closed-form W over x at fixed k (momentum marginal in k
/// variables), trapezoid on n samples across the x support. n = 0 picks a step
/// that resolves the ridge and the x-fringes.
double momentum_marginal(const ScreenState& state, double k, std::size_t n = 0);

/// 1-D trapezoid weight for sample i of n.
inline double trapezoid_weight(std::size_t i, std::size_t n) {
  return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

}  // namespace dslit

#include "dslit/parallel.hpp"

template <typename Fn>
dslit::PhaseSpaceField dslit::sample_field(const GridSpec& spec, Fn&& fn) {
  spec.validate();
  PhaseSpaceField field{spec, std::vector<double>(spec.nx * spec.nk)};
  parallel_for(spec.nx, [&](std::size_t i) {
    for (std::size_t j = 0; j < spec.nk; ++j) {
      field.values[i * spec.nk + j] = fn(spec.point(i, j));
    }
  });
  return field;
}
