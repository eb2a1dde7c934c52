#include "dslit/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "dslit/bell.hpp"
#include "dslit/correlations.hpp"
#include "dslit/field_io.hpp"
#include "dslit/wigner.hpp"

namespace dslit {

namespace {

using json = nlohmann::ordered_json;

constexpr double kWarnTimeTau0 = 10.0;
constexpr std::size_t kMaxRefinedGrid = 1024;

std::ofstream open_output(const RunConfig& run, const std::string& name, bool binary = false) {
  std::filesystem::create_directories(run.output_dir);
  const auto path = run.output_dir / name;
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

/// Writes the summary as JSON next to the data and as "key: value" lines.
void emit_summary(const RunConfig& run, const std::string& name, const json& summary, std::ostream& out) {
  open_output(run, name) << summary.dump(2) << '\n';
  for (auto it = summary.begin(); it != summary.end(); ++it) {
    out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
}

std::pair<double, double> scan_range(const CommandOptions& o) {
  const double t0 = o.run.tau0();
  if (o.t_range) {
    return {o.t_range->first.si(Dimension::Time, t0), o.t_range->second.si(Dimension::Time, t0)};
  }
  return {o.run.scan_t_lo.si(Dimension::Time, t0), o.run.scan_t_hi.si(Dimension::Time, t0)};
}

ExtremaResult extrema_for(const CommandOptions& o) {
  const ExperimentConfig cfg = o.run.experiment();
  const auto [lo, hi] = scan_range(o);
  if (!(lo >= 0.0 && hi > lo)) throw ValidationError("t-range", "need 0 <= t_lo < t_hi");
  return find_extrema(cfg.tau, lo, hi, cfg);
}

json extremum_json(const std::optional<Extremum>& e, double tau0) {
  if (!e) return nullptr;
  return {{"t_s", e->t}, {"t_over_tau0", e->t / tau0}, {"sigma_xp_Js", e->sigma_xp},
          {"sigma_xp_over_hbar", e->sigma_xp / kConstants.hbar}};
}

json experiment_json(const ExperimentConfig& c, double tau0) {
  json j{{"mass_kg", c.mass}, {"sigma0_m", c.sigma0}, {"beta_m", c.beta}, {"d_m", c.d},
         {"rho", c.rho},      {"tau_s", c.tau},       {"tau0_s", tau0}};
  const DerivedScales s = derive_scales(c);
  if (s.vz) j["vz_m_per_s"] = *s.vz;
  return j;
}

std::pair<std::size_t, std::size_t> grid_override(const CommandOptions& o, std::size_t fallback) {
  if (o.grid) return *o.grid;
  return {o.run.grid_nx.value_or(fallback), o.run.grid_nk.value_or(fallback)};
}

bool grid_fixed(const CommandOptions& o) { return o.grid || o.run.grid_nx || o.run.grid_nk; }

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

json negativity_json(const NegativityReport& r) {
  return {{"min_value", r.min_value},
          {"min_x_m", r.min_location.x},
          {"min_k_per_m", r.min_location.k},
          {"max_value", r.max_value},
          {"min_over_max", r.min_value / r.max_value},
          {"negative_volume", r.negative_volume},
          {"total_integral", r.total_integral}};
}

}  // namespace

TimeChoice TimeChoice::parse(const std::string& text) {
  if (text == "at-min") return {Kind::AtMin, {}};
  if (text == "at-max") return {Kind::AtMax, {}};
  return {Kind::Explicit, Quantity::parse(text, Dimension::Time, "t")};
}

std::string TimeChoice::tag() const {
  switch (kind) {
    case Kind::AtMin:
      return "tmin";
    case Kind::AtMax:
      return "tmax";
    case Kind::Explicit:
      break;
  }
  std::string s = "t" + format_double(value.value) + (value.unit.empty() ? "s" : value.unit);
  for (char& c : s) {
    if (c == '/' || c == ' ') c = '_';
  }
  return s;
}

ResolvedTime resolve_time(const CommandOptions& o, std::ostream& err) {
  TimeChoice choice;
  if (o.t) {
    choice = *o.t;
  } else if (o.run.t) {
    choice = {TimeChoice::Kind::Explicit, *o.run.t};
  }
  const double tau0 = o.run.tau0();
  double t = 0.0;
  if (choice.kind == TimeChoice::Kind::Explicit) {
    t = choice.value.si(Dimension::Time, tau0);
    if (!std::isfinite(t) || t < 0.0) throw ValidationError("t", "must be finite and >= 0");
  } else {
    const ExtremaResult ex = extrema_for(o);
    const auto& e = choice.kind == TimeChoice::Kind::AtMin ? ex.minimum : ex.maximum;
    if (!e) {
      throw std::runtime_error(std::string("sigma_xp has no interior ") +
                               (choice.kind == TimeChoice::Kind::AtMin ? "minimum" : "maximum") +
                               " in the scan range");
    }
    t = e->t;
  }
  if (t > kWarnTimeTau0 * tau0) {
    err << "warning: t = " << t / tau0 << " tau0 lies outside the validated range [0, 10] tau0\n";
  }
  return {t, choice.tag()};
}

int cmd_psi(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = o.run.experiment();
  const ResolvedTime rt = resolve_time(o, err);
  const ScreenState state(cfg, rt.seconds, cfg.tau);
  const SlitBeamParams& p = state.params();
  const std::size_t n = o.n.value_or(2001);
  if (n < 2) throw ValidationError("n", "need at least 2 samples");

  const double half = std::abs(p.D) / 2.0 + 5.0 * p.B;
  {
    auto f = open_output(o.run, "psi_" + rt.tag + ".csv");
    f << "x_m,re_psi,im_psi,abs2_psi\n";
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
      const Amplitude a = state.psi(x);
      f << format_double(x) << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << ','
        << format_double(std::norm(a)) << '\n';
    }
  }
  const double tau0 = state.scales().tau0;
  json s{{"command", "psi"},
         {"t_s", rt.seconds},
         {"t_over_tau0", rt.seconds / tau0},
         {"samples", n},
         {"B_m", p.B},
         {"D_m", p.D},
         {"Delta_per_m", p.Delta},
         {"inv_R_per_s", p.inv_R},
         {"theta", p.theta},
         {"mu", p.mu},
         {"overlap_exponent", state.overlap_exponent()}};
  if (p.D != 0.0) {
    const OverlapRatios r = overlap_report(state);
    s["B2_over_D2"] = r.b2_over_d2;
    s["D2_over_B2"] = r.d2_over_b2;
  }
  s["experiment"] = experiment_json(cfg, tau0);
  emit_summary(o.run, "psi_" + rt.tag + "_summary.json", s, out);
  return 0;
}

int cmd_sigma_xp(const CommandOptions& o, std::ostream& out, std::ostream&) {
  const ExperimentConfig cfg = o.run.experiment();
  const auto [lo, hi] = scan_range(o);
  if (!(lo >= 0.0 && hi > lo)) throw ValidationError("t-range", "need 0 <= t_lo < t_hi");
  const std::size_t n = o.n.value_or(o.run.scan_n);
  const double tau0 = derive_scales(cfg).tau0;
  const SigmaXpCurve curve = sigma_xp_curve(cfg.tau, lo, hi, n, cfg);
  {
    auto f = open_output(o.run, "sigma-xp.csv");
    f << "t_s,t_over_tau0,sigma_xp_Js,sigma_xp_over_hbar\n";
    for (const SigmaXpSample& s : curve.samples) {
      f << format_double(s.t) << ',' << format_double(s.t / tau0) << ',' << format_double(s.sigma_xp) << ','
        << format_double(s.sigma_xp / kConstants.hbar) << '\n';
    }
  }
  const ExtremaResult ex = find_extrema(cfg.tau, lo, hi, cfg);
  json s{{"command", "sigma-xp"},
         {"samples", n},
         {"t_lo_s", lo},
         {"t_hi_s", hi},
         {"minimum", extremum_json(ex.minimum, tau0)},
         {"maximum", extremum_json(ex.maximum, tau0)},
         {"experiment", experiment_json(cfg, tau0)}};
  emit_summary(o.run, "sigma-xp_summary.json", s, out);
  return 0;
}

int cmd_extrema(const CommandOptions& o, std::ostream& out, std::ostream&) {
  const ExperimentConfig cfg = o.run.experiment();
  const auto [lo, hi] = scan_range(o);
  const ExtremaResult ex = extrema_for(o);
  const double tau0 = derive_scales(cfg).tau0;
  json s{{"command", "extrema"},
         {"t_lo_s", lo},
         {"t_hi_s", hi},
         {"bracket_tolerance_s", ex.bracket_tolerance},
         {"minimum", extremum_json(ex.minimum, tau0)},
         {"maximum", extremum_json(ex.maximum, tau0)}};
  for (const auto& [name, e] : {std::pair{"minimum", ex.minimum}, std::pair{"maximum", ex.maximum}}) {
    if (!e || cfg.d == 0.0) continue;
    const OverlapRatios r = overlap_report(ScreenState(cfg, e->t, cfg.tau));
    s[std::string(name)]["B2_over_D2"] = r.b2_over_d2;
    s[std::string(name)]["D2_over_B2"] = r.d2_over_b2;
  }
  s["experiment"] = experiment_json(cfg, tau0);
  emit_summary(o.run, "extrema_summary.json", s, out);
  return 0;
}

int cmd_wigner(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = o.run.experiment();
  const ResolvedTime rt = resolve_time(o, err);
  const ScreenState state(cfg, rt.seconds, cfg.tau);

  // Fixed grid when requested, otherwise double the resolution until the
  // negativity metrics move by less than 1%.
  auto [nx, nk] = grid_override(o, 256);
  PhaseSpaceField field = wigner_grid(state, auto_wigner_grid(state, nx, nk));
  NegativityReport report = negativity(field);
  json levels = json::array();
  levels.push_back({{"nx", nx}, {"nk", nk}, {"negative_volume", report.negative_volume}, {"min_value", report.min_value}});
  bool converged = grid_fixed(o);
  while (!converged && nx < kMaxRefinedGrid) {
    nx *= 2;
    nk *= 2;
    PhaseSpaceField finer = wigner_grid(state, auto_wigner_grid(state, nx, nk));
    const NegativityReport next = negativity(finer);
    levels.push_back({{"nx", nx}, {"nk", nk}, {"negative_volume", next.negative_volume}, {"min_value", next.min_value}});
    converged = relative_change(next.negative_volume, report.negative_volume) < 0.01 &&
                relative_change(next.min_value, report.min_value) < 0.01;
    field = std::move(finer);
    report = next;
  }
  if (!converged) err << "warning: negativity not converged to 1% at " << nx << " x " << nk << '\n';

  const std::string stem = "wigner_" + rt.tag;
  {
    auto f = open_output(o.run, stem + ".csv");
    write_field_csv(f, field, "W");
  }
  if (o.run.binary) {
    auto f = open_output(o.run, stem + ".bin", true);
    write_field_binary(f, field);
  }
  const double tau0 = state.scales().tau0;
  json s{{"command", "wigner"},
         {"t_s", rt.seconds},
         {"t_over_tau0", rt.seconds / tau0},
         {"nx", field.spec.nx},
         {"nk", field.spec.nk},
         {"k_shear_per_m2", field.spec.k_shear},
         {"converged", converged},
         {"negativity", negativity_json(report)},
         {"refinement", levels},
         {"experiment", experiment_json(cfg, tau0)}};
  emit_summary(o.run, stem + "_summary.json", s, out);
  return 0;
}

int cmd_bell(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = o.run.experiment();
  const BellSettings settings = o.run.bell();
  const ResolvedTime rt = resolve_time(o, err);
  const ScreenState state(cfg, rt.seconds, cfg.tau);
  const auto [nx, nk] = grid_override(o, 401);
  const BellScanResult r = bell_scan(state, settings, auto_bell_grid(state, settings, nx, nk));

  const std::string stem = "bell_" + rt.tag;
  {
    auto f = open_output(o.run, stem + ".csv");
    write_field_csv(f, r.field, "B");
  }
  if (o.run.binary) {
    auto f = open_output(o.run, stem + ".bin", true);
    write_field_binary(f, r.field);
  }
  const double tau0 = state.scales().tau0;
  json s{{"command", "bell"},
         {"t_s", rt.seconds},
         {"t_over_tau0", rt.seconds / tau0},
         {"form", std::string(to_string(settings.form))},
         {"scaling", settings.scaling},
         {"x1_m", settings.x1},
         {"k1_per_m", settings.k1},
         {"nx", r.field.spec.nx},
         {"nk", r.field.spec.nk},
         {"grid_max", r.grid_max_value},
         {"max_value", r.max_value},
         {"argmax_x_m", r.argmax.x},
         {"argmax_k_per_m", r.argmax.k},
         {"violates_local_bound", r.max_value > kLocalBound},
         {"violation_fraction", r.violation_fraction},
         {"experiment", experiment_json(cfg, tau0)}};
  emit_summary(o.run, stem + "_summary.json", s, out);
  return 0;
}

int cmd_verify(const CommandOptions& o, std::ostream& out, std::ostream&) {
  const ExperimentConfig cfg = o.run.experiment();
  const VerifyReport report = run_verification(cfg, {o.level, o.curvature});
  const std::string name = std::string("verify_") + (o.level == VerifyLevel::Quick ? "quick" : "full") + ".json";
  open_output(o.run, name) << report.to_json();
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  error=" << format_double(c.measured)
        << "  tolerance=" << format_double(c.tolerance) << '\n';
  }
  out << (report.passed() ? "verification passed" : "verification FAILED") << '\n';
  return report.passed() ? 0 : 1;
}

}  // namespace dslit
