#include "dslit/verify.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "dslit/correlations.hpp"
#include "dslit/oracle.hpp"
#include "dslit/wigner.hpp"

namespace dslit {

namespace {

constexpr double kPsiTolerance = 1e-6;      // relative L2
constexpr double kWignerTolerance = 1e-6;   // absolute
constexpr double kSigmaTolerance = 1e-6;    // relative
constexpr double kIdentityTolerance = 1e-10;
constexpr double kIntegralTolerance = 1e-4;

struct Case {
  double rho;
  double t_over_tau0;
};

std::string case_tag(const Case& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "rho=%+g,t=%gtau0", c.rho, c.t_over_tau0);
  return buf;
}

void add(VerifyReport& report, std::string name, double tolerance, double measured) {
  report.checks.push_back({std::move(name), tolerance, measured, std::isfinite(measured) && measured < tolerance});
}

void check_case(VerifyReport& report, const ExperimentConfig& base, const Case& c, CurvatureForm form,
                std::size_t wigner_points) {
  ExperimentConfig cfg = base;
  cfg.rho = c.rho;
  const double tau0 = derive_scales(cfg).tau0;
  const double t = c.t_over_tau0 * tau0;
  const ScreenState state(cfg, t, cfg.tau, form);
  const SlitBeamParams& p = state.params();

  const double half = std::abs(p.D) / 2.0 + 9.0 * p.B;
  const oracle::UniformGrid grid{-half, half, 60001};
  oracle::PropagationOptions opt;
  opt.refinement = 2.0;
  const auto psi = oracle::propagate_numeric(cfg, t, cfg.tau, std::nullopt, grid, opt);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto a = state.psi(grid.x(i));
    num += std::norm(a - psi.values[i]);
    den += std::norm(a);
  }
  const std::string tag = case_tag(c);
  add(report, "psi_screen_vs_quadrature[" + tag + "]", kPsiTolerance, std::sqrt(num / den));

  std::vector<PhaseSpacePoint> pts;
  const double x_half = std::abs(p.D) / 2.0 + 2.0 * p.B;
  const double q_half = std::abs(p.Delta) + 2.0 / p.B;
  for (auto [u, v] : quasi_random_unit_points(wigner_points)) {
    const double x = (2.0 * u - 1.0) * x_half;
    pts.push_back({x, state.chirp() * x + (2.0 * v - 1.0) * q_half});
  }
  const auto w = oracle::wigner_numeric(psi, pts);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    worst = std::max(worst, std::abs(w.values[i] - wigner_point(state, pts[i])));
  }
  add(report, "wigner_vs_quadrature[" + tag + "]", kWignerTolerance, worst);

  const double closed = sigma_xp(state);
  const double numeric = oracle::moments_numeric(psi).moments.sigma_xp;
  const double scale = std::max(std::abs(numeric), kConstants.hbar / 100.0);
  add(report, "sigma_xp_vs_moments[" + tag + "]", kSigmaTolerance, std::abs(closed - numeric) / scale);
}

void check_initial_state(VerifyReport& report, const ExperimentConfig& base, double rho) {
  ExperimentConfig cfg = base;
  cfg.rho = rho;
  const double s0 = cfg.sigma0;
  const auto psi0 = oracle::sample_initial_state(cfg, {-14.0 * s0, 14.0 * s0, 5601});
  const MomentSet numeric = oracle::moments_numeric(psi0).moments;
  const MomentSet closed = initial_moments(cfg);
  char tag[32];
  std::snprintf(tag, sizeof tag, "[rho=%+g]", rho);
  add(report, std::string("initial_sigma_xx") + tag, kIdentityTolerance,
      std::abs(numeric.sigma_xx - closed.sigma_xx) / closed.sigma_xx);
  add(report, std::string("initial_sigma_pp") + tag, kIdentityTolerance,
      std::abs(numeric.sigma_pp - closed.sigma_pp) / closed.sigma_pp);
  const double xp_scale = std::max(std::abs(closed.sigma_xp), kConstants.hbar);
  add(report, std::string("initial_sigma_xp") + tag, kIdentityTolerance, std::abs(numeric.sigma_xp - closed.sigma_xp) / xp_scale);
}

}  // namespace

std::vector<std::pair<double, double>> quasi_random_unit_points(std::size_t n) {
  // Plastic number g solves g^3 = g + 1.
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g;
  constexpr double a2 = 1.0 / (g * g);
  std::vector<std::pair<double, double>> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    pts[i] = {std::fmod(0.5 + a1 * k, 1.0), std::fmod(0.5 + a2 * k, 1.0)};
  }
  return pts;
}

bool VerifyReport::passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["level"] = level == VerifyLevel::Quick ? "quick" : "full";
  j["passed"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"tolerance", c.tolerance}, {"measured", c.measured}, {"passed", c.passed}});
  }
  return j.dump(2) + "\n";
}

VerifyReport run_verification(const ExperimentConfig& config, const VerifyOptions& options) {
  config.validate();
  VerifyReport report;
  report.level = options.level;
  if (options.level == VerifyLevel::Quick) {
    check_case(report, config, {config.rho, 1.0}, options.curvature, 20);
    check_initial_state(report, config, config.rho);
    return report;
  }
  for (double rho : {-1.0, 0.0, 1.0}) {
    for (double t : {0.3, 1.0, 2.0}) check_case(report, config, {rho, t}, options.curvature, 100);
    check_initial_state(report, config, rho);
  }
  const double tau0 = derive_scales(config).tau0;
  const ScreenState state(config, tau0, config.tau, options.curvature);
  const NegativityReport neg = negativity(wigner_grid(state));
  add(report, "wigner_auto_grid_integral", kIntegralTolerance, std::abs(neg.total_integral - 1.0));
  return report;
}

}  // namespace dslit
