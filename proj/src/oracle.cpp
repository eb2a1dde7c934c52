#include "dslit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dslit/parallel.hpp"

namespace dslit::oracle {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Source support: psi_0 falls below e^-40 beyond 9 sigma0.
constexpr double kSourceWidths = 9.0;
// Slit plane support in units of beta, and minimum samples per width.
constexpr double kSlitWidths = 10.0;
constexpr double kSamplesPerWidth = 16.0;

std::size_t samples_for(double span, double step) {
  return static_cast<std::size_t>(std::ceil(span / step)) + 1;
}

// Free propagator sqrt(m / (2 pi i hbar T)) on the principal branch.
cplx propagator_prefactor(double mass, double time) {
  return std::sqrt(mass / (2.0 * kPi * kConstants.hbar * time)) * std::polar(1.0, -kPi / 4.0);
}

cplx initial_amplitude(const ExperimentConfig& c, double x) {
  const double s2 = c.sigma0 * c.sigma0;
  const double norm = 1.0 / std::sqrt(c.sigma0 * std::sqrt(kPi));
  return norm * std::exp(cplx(-x * x / (2.0 * s2), c.rho * x * x / (2.0 * s2)));
}

double slit_transmission(const ExperimentConfig& c, double x, double center) {
  const double u = x - center;
  return std::exp(-u * u / (2.0 * c.beta * c.beta)) / std::sqrt(c.beta * std::sqrt(kPi));
}

// Upper bound on the free-packet half width after time t by the triangle
// inequality on the spreading polynomial: b(t) <= sigma0 (1 + (1+|rho|) t/tau0).
double spreading_bound(const ExperimentConfig& c, double t) {
  const double tau0 = c.mass * c.sigma0 * c.sigma0 / kConstants.hbar;
  return c.sigma0 * (1.0 + (1.0 + std::abs(c.rho)) * t / tau0);
}

// sum_j a_j exp(i chirp (x - x_j)^2) for x_j = x0 + j h, with the weights
// pre-multiplied as b_j = a_j exp(i chirp x_j^2). Expanding the square leaves a
// geometric factor r^j, r = exp(-2i chirp x h), summed by Horner's rule.
cplx chirped_sum(const std::vector<cplx>& b, double x0, double h, double chirp, double x) {
  const cplx r = std::polar(1.0, -2.0 * chirp * x * h);
  cplx acc = 0.0;
  for (std::size_t j = b.size(); j-- > 0;) acc = acc * r + b[j];
  return acc * std::polar(1.0, chirp * x * x - 2.0 * chirp * x * x0);
}

std::vector<cplx> premultiply(const std::vector<cplx>& a, double x0, double h, double chirp) {
  std::vector<cplx> b(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double xj = x0 + static_cast<double>(j) * h;
    b[j] = a[j] * std::polar(1.0, chirp * xj * xj);
  }
  return b;
}

struct SlitPlane {
  double x_min;
  double step;
  std::size_t n;
  std::vector<cplx> amplitude;  // psi just before the slit, times transmission
};

// Amplitude at the slit plane after time t, for every open slit, multiplied
// by the transmission. Returned as one grid spanning the open slits.
std::vector<SlitPlane> slit_planes(const ExperimentConfig& c, double t, SlitChoice slits,
                                   double screen_reach, double tau, const PropagationOptions& opt) {
  const double reach = kSourceWidths * spreading_bound(c, t) * 1.5;
  std::vector<double> centers;
  if (!slits || *slits == SlitSelector::Plus) centers.push_back(-c.d / 2.0);
  if (!slits || *slits == SlitSelector::Minus) centers.push_back(c.d / 2.0);

  const double source_half = kSourceWidths * c.sigma0;
  std::vector<SlitPlane> planes;
  for (double center : centers) {
    double lo = std::max(center - kSlitWidths * c.beta, -reach);
    double hi = std::min(center + kSlitWidths * c.beta, reach);
    if (lo >= hi) {  // slit far outside the packet: nothing is transmitted
      lo = center - c.beta;
      hi = center + c.beta;
    }
    const double max_abs = std::max(std::abs(lo), std::abs(hi));

    double required = std::min(c.sigma0, c.beta) / kSamplesPerWidth;
    if (t > 0.0) required = std::min(required, chirp_step(c.mass, t, source_half + max_abs));
    required = std::min(required, chirp_step(c.mass, tau, screen_reach + max_abs));
    double step = required / opt.refinement;
    if (opt.quadrature_step > 0.0) {
      if (opt.quadrature_step > required) throw NyquistError(opt.quadrature_step, required);
      step = opt.quadrature_step;
    }

    SlitPlane plane;
    plane.n = samples_for(hi - lo, step);
    plane.step = (hi - lo) / static_cast<double>(plane.n - 1);
    plane.x_min = lo;
    plane.amplitude.resize(plane.n);

    if (t == 0.0) {
      for (std::size_t j = 0; j < plane.n; ++j) {
        const double xj = lo + static_cast<double>(j) * plane.step;
        plane.amplitude[j] = initial_amplitude(c, xj) * slit_transmission(c, xj, center);
      }
    } else if (opt.inner == InnerIntegral::Gaussian) {
      // psi_0 = N exp(-a x^2) propagates to N pref sqrt(pi/A) exp(-(k^2/A - i k) x^2)
      // with k = m / (2 hbar t) and A = a - i k.
      const double k = c.mass / (2.0 * kConstants.hbar * t);
      const cplx a(1.0 / (2.0 * c.sigma0 * c.sigma0), -c.rho / (2.0 * c.sigma0 * c.sigma0));
      const cplx A = a - cplx(0.0, k);
      const cplx coeff = k * k / A - cplx(0.0, k);
      const cplx pre = propagator_prefactor(c.mass, t) * std::sqrt(kPi / A) /
                       std::sqrt(c.sigma0 * std::sqrt(kPi));
      for (std::size_t j = 0; j < plane.n; ++j) {
        const double xj = lo + static_cast<double>(j) * plane.step;
        plane.amplitude[j] = pre * std::exp(-coeff * xj * xj) * slit_transmission(c, xj, center);
      }
    } else {
      double src_step = std::min(c.sigma0 / kSamplesPerWidth,
                                 chirp_step(c.mass, t, source_half + max_abs)) / opt.refinement;
      if (opt.quadrature_step > 0.0) src_step = opt.quadrature_step;
      const std::size_t ni = samples_for(2.0 * source_half, src_step);
      const double hi_step = 2.0 * source_half / static_cast<double>(ni - 1);
      std::vector<cplx> source(ni);
      for (std::size_t i = 0; i < ni; ++i) {
        const double xi = -source_half + static_cast<double>(i) * hi_step;
        source[i] = trapezoid_weight(i, ni) * hi_step * initial_amplitude(c, xi);
      }
      const double chirp = c.mass / (2.0 * kConstants.hbar * t);
      const std::vector<cplx> weighted = premultiply(source, -source_half, hi_step, chirp);
      const cplx pre = propagator_prefactor(c.mass, t);
      parallel_for(plane.n, [&](std::size_t j) {
        const double xj = lo + static_cast<double>(j) * plane.step;
        plane.amplitude[j] = pre * chirped_sum(weighted, -source_half, hi_step, chirp, xj) *
                             slit_transmission(c, xj, center);
      });
    }
    planes.push_back(std::move(plane));
  }
  return planes;
}

SampledWavefunction to_screen(const ExperimentConfig& c, const std::vector<SlitPlane>& planes,
                              double tau, const UniformGrid& screen) {
  SampledWavefunction out;
  out.grid = screen;
  out.values.assign(screen.n, cplx{});
  const double chirp = c.mass / (2.0 * kConstants.hbar * tau);
  const cplx pre = propagator_prefactor(c.mass, tau);
  std::vector<std::vector<cplx>> weighted;
  for (const SlitPlane& p : planes) {
    std::vector<cplx> a(p.n);
    for (std::size_t j = 0; j < p.n; ++j) a[j] = trapezoid_weight(j, p.n) * p.step * p.amplitude[j];
    weighted.push_back(premultiply(a, p.x_min, p.step, chirp));
  }
  parallel_for(screen.n, [&](std::size_t i) {
    const double x = screen.x(i);
    cplx total = 0.0;
    for (std::size_t s = 0; s < planes.size(); ++s) {
      total += chirped_sum(weighted[s], planes[s].x_min, planes[s].step, chirp, x);
    }
    out.values[i] = pre * total;
  });
  return out;
}

void normalize(SampledWavefunction& psi) {
  const double scale = 1.0 / std::sqrt(psi.norm());
  for (cplx& v : psi.values) v *= scale;
}

double screen_reach(const UniformGrid& g) { return std::max(std::abs(g.x_min), std::abs(g.x_max)); }

}  // namespace

void UniformGrid::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max)) {
    throw ValidationError("x_grid", "require finite x_min < x_max");
  }
  if (n < 2) throw ValidationError("x_grid.n", "must be >= 2");
}

double SampledWavefunction::norm() const {
  double sum = 0.0;
  for (const cplx& v : values) sum += std::norm(v);
  return sum * grid.step();
}

NyquistError::NyquistError(double requested, double required)
    : std::runtime_error("quadrature step " + std::to_string(requested) +
                         " m cannot resolve the propagation chirp; need <= " +
                         std::to_string(required) + " m"),
      required_(required) {}

double chirp_step(double mass, double time, double span) {
  return kPi * kConstants.hbar * time / (mass * span) / 4.0;
}

SampledWavefunction sample_initial_state(const ExperimentConfig& config, const UniformGrid& grid) {
  config.validate();
  grid.validate();
  SampledWavefunction psi;
  psi.grid = grid;
  psi.values.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) psi.values[i] = initial_amplitude(config, grid.x(i));
  return psi;
}

SampledWavefunction propagate_numeric(const ExperimentConfig& config, double t, double tau,
                                      SlitChoice slits, const UniformGrid& screen,
                                      const PropagationOptions& options) {
  config.validate();
  screen.validate();
  if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
  if (!(tau > 0.0)) throw ValidationError("tau", "must be > 0");
  const auto planes = slit_planes(config, t, slits, screen_reach(screen), tau, options);
  SampledWavefunction psi = to_screen(config, planes, tau, screen);
  psi.t = t;
  psi.tau = tau;
  normalize(psi);
  return psi;
}

SampledWavefunction propagate_free_numeric(const ExperimentConfig& config, double t,
                                           const UniformGrid& screen, const PropagationOptions& options) {
  config.validate();
  screen.validate();
  if (!(t > 0.0)) throw ValidationError("t", "must be > 0");
  const double source_half = kSourceWidths * config.sigma0;
  double required = std::min(config.sigma0 / kSamplesPerWidth,
                             chirp_step(config.mass, t, source_half + screen_reach(screen)));
  double step = required / options.refinement;
  if (options.quadrature_step > 0.0) {
    if (options.quadrature_step > required) throw NyquistError(options.quadrature_step, required);
    step = options.quadrature_step;
  }
  SlitPlane source;
  source.n = samples_for(2.0 * source_half, step);
  source.step = 2.0 * source_half / static_cast<double>(source.n - 1);
  source.x_min = -source_half;
  source.amplitude.resize(source.n);
  for (std::size_t i = 0; i < source.n; ++i) {
    source.amplitude[i] = initial_amplitude(config, source.x_min + static_cast<double>(i) * source.step);
  }
  SampledWavefunction psi = to_screen(config, {source}, t, screen);
  psi.t = t;
  normalize(psi);
  return psi;
}

std::complex<double> interpolate_cubic(const SampledWavefunction& psi, double x) {
  const UniformGrid& g = psi.grid;
  const double h = g.step();
  const double u = (x - g.x_min) / h;
  if (u < 0.0 || u > static_cast<double>(g.n - 1)) return {};
  const auto base = static_cast<std::ptrdiff_t>(std::floor(u));
  const double f = u - static_cast<double>(base);
  const double w[4] = {
      -f * (f - 1.0) * (f - 2.0) / 6.0,
      (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
      -(f + 1.0) * f * (f - 2.0) / 2.0,
      (f + 1.0) * f * (f - 1.0) / 6.0,
  };
  cplx sum = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(g.n);
  for (int m = 0; m < 4; ++m) {
    const std::ptrdiff_t idx = base - 1 + m;
    if (idx >= 0 && idx < n) sum += w[m] * psi.values[static_cast<std::size_t>(idx)];
  }
  return sum;
}

WignerSamples wigner_numeric(const SampledWavefunction& psi, const std::vector<PhaseSpacePoint>& pts) {
  const UniformGrid& g = psi.grid;
  const double h = g.step();
  WignerSamples out;
  out.values.resize(pts.size());
  std::vector<double> residue(pts.size(), 0.0);
  for (const PhaseSpacePoint& pt : pts) {
    if (!(pt.x >= g.x_min && pt.x <= g.x_max)) {
      throw std::out_of_range("phase-space point lies outside the sampled wavefunction support");
    }
  }
  parallel_for(pts.size(), [&](std::size_t p) {
    const PhaseSpacePoint pt = pts[p];
    // Substituting y = 2s: W = 1/pi int ds e^{-2iks} psi*(x-s) psi(x+s).
    const double reach = std::min(pt.x - g.x_min, g.x_max - pt.x);
    const auto m_max = static_cast<std::ptrdiff_t>(std::floor(reach / h));
    cplx sum = 0.0;
    for (std::ptrdiff_t m = -m_max; m <= m_max; ++m) {
      const double s = static_cast<double>(m) * h;
      const double w = (m == -m_max || m == m_max) ? 0.5 : 1.0;
      sum += w * std::polar(1.0, -2.0 * pt.k * s) * std::conj(interpolate_cubic(psi, pt.x - s)) *
             interpolate_cubic(psi, pt.x + s);
    }
    sum *= h / kPi;
    out.values[p] = sum.real();
    residue[p] = std::abs(sum.imag());
  });
  out.max_imag_residue = residue.empty() ? 0.0 : *std::max_element(residue.begin(), residue.end());
  if (out.max_imag_residue > 1e-8) {
    throw std::runtime_error("Wigner quadrature left an imaginary residue of " +
                             std::to_string(out.max_imag_residue));
  }
  return out;
}

MomentReport moments_numeric(const SampledWavefunction& psi) {
  static constexpr double kStencil[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  const UniformGrid& g = psi.grid;
  const double h = g.step();
  const double hbar = kConstants.hbar;
  const auto n = static_cast<std::ptrdiff_t>(g.n);
  auto value = [&](std::ptrdiff_t i) { return (i >= 0 && i < n) ? psi.values[i] : cplx{}; };

  double norm = 0.0, sx = 0.0, sxx = 0.0, sp = 0.0, spp = 0.0, sxp = 0.0, peak = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cplx deriv = 0.0;
    for (int s = 1; s <= 4; ++s) deriv += kStencil[s - 1] * (value(i + s) - value(i - s));
    deriv /= h;
    const cplx v = psi.values[i];
    const double x = g.x(static_cast<std::size_t>(i));
    const double rho = std::norm(v);
    const cplx p_psi = cplx(0.0, -hbar) * deriv;
    norm += rho;
    sx += x * rho;
    sxx += x * x * rho;
    sp += (std::conj(v) * p_psi).real();
    spp += hbar * hbar * std::norm(deriv);
    sxp += (std::conj(v) * x * p_psi).real();
    peak = std::max(peak, rho);
  }
  MomentReport r;
  r.mean_x = sx / norm;
  r.mean_p = sp / norm;
  r.moments.sigma_xx = std::sqrt(sxx / norm - r.mean_x * r.mean_x);
  r.moments.sigma_pp = std::sqrt(spp / norm - r.mean_p * r.mean_p);
  r.moments.sigma_xp = sxp / norm - r.mean_x * r.mean_p;
  r.boundary_ratio = std::max(std::norm(psi.values.front()), std::norm(psi.values.back())) / peak;
  r.covers_support = r.boundary_ratio <= 1e-8;
  return r;
}

MomentReport moments_numeric(const PhaseSpaceField& field) {
  const GridSpec& spec = field.spec;
  const double hbar = kConstants.hbar;
  double norm = 0.0, sx = 0.0, sxx = 0.0, sk = 0.0, skk = 0.0, sxk = 0.0, peak = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < spec.nx; ++i) {
    const double wi = trapezoid_weight(i, spec.nx);
    const double x = spec.x(i);
    for (std::size_t j = 0; j < spec.nk; ++j) {
      const double k = spec.k(i, j);
      const double v = field.at(i, j);
      const double w = wi * trapezoid_weight(j, spec.nk) * v;
      norm += w;
      sx += w * x;
      sxx += w * x * x;
      sk += w * k;
      skk += w * k * k;
      sxk += w * x * k;
      peak = std::max(peak, std::abs(v));
      if (i == 0 || j == 0 || i + 1 == spec.nx || j + 1 == spec.nk) edge = std::max(edge, std::abs(v));
    }
  }
  MomentReport r;
  r.mean_x = sx / norm;
  const double mean_k = sk / norm;
  r.mean_p = hbar * mean_k;
  r.moments.sigma_xx = std::sqrt(sxx / norm - r.mean_x * r.mean_x);
  r.moments.sigma_pp = hbar * std::sqrt(skk / norm - mean_k * mean_k);
  r.moments.sigma_xp = hbar * (sxk / norm - r.mean_x * mean_k);
  r.boundary_ratio = edge / peak;
  r.covers_support = r.boundary_ratio <= 1e-8;
  return r;
}

double momentum_density_numeric(const SampledWavefunction& psi, double k) {
  const UniformGrid& g = psi.grid;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) sum += psi.values[i] * std::polar(1.0, -k * g.x(i));
  sum *= g.step();
  return std::norm(sum) / (2.0 * kPi);
}

ConvergenceReport convergence_study(const std::function<double(double)>& f, double step,
                                    std::size_t levels) {
  if (levels < 3) throw std::invalid_argument("convergence study needs at least 3 levels");
  ConvergenceReport r;
  for (std::size_t l = 0; l < levels; ++l) {
    const double h = step / std::pow(2.0, static_cast<double>(l));
    r.levels.push_back({h, f(h)});
  }
  std::vector<double> diffs;
  for (std::size_t l = 1; l < levels; ++l) diffs.push_back(r.levels[l].value - r.levels[l - 1].value);
  for (std::size_t l = 1; l < diffs.size(); ++l) {
    if (diffs[l] * diffs[l - 1] <= 0.0 || std::abs(diffs[l]) >= std::abs(diffs[l - 1])) r.monotone = false;
  }
  const double last = r.levels.back().value;
  const double d_last = diffs.back();
  if (!r.monotone) {
    r.extrapolated = last;
    r.estimated_error = std::abs(d_last);
    return r;
  }
  r.observed_order = std::log2(diffs[diffs.size() - 2] / d_last);
  const double factor = std::pow(2.0, r.observed_order) - 1.0;
  r.extrapolated = last + d_last / factor;
  r.estimated_error = std::abs(d_last / factor);
  return r;
}

}  // namespace dslit::oracle
