// Command-line front end: psi, sigma-xp, extrema, wigner, bell, verify.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dslit/commands.hpp"

namespace {

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  std::size_t nx = 0, nk = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> nx >> comma >> nk) || comma != ',' || !in.eof() || nx < 2 || nk < 2) {
    throw dslit::ValidationError("grid", "expected NX,NK with both >= 2, got '" + text + "'");
  }
  return {nx, nk};
}

std::pair<dslit::Quantity, dslit::Quantity> parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw dslit::ValidationError("t-range", "expected LO,HI");
  return {dslit::Quantity::parse(text.substr(0, comma), dslit::Dimension::Time, "t-range"),
          dslit::Quantity::parse(text.substr(comma + 1), dslit::Dimension::Time, "t-range")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated-Gaussian double slit: closed forms, Wigner maps, Bell scans"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, grid, t, form, t_range, level = "quick";
  double scaling = 0.0;
  std::size_t n = 0;
  bool binary = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (default ./out)");
  app.add_option("--grid", grid, "Grid resolution NX,NK");
  app.add_option("--t", t, "Screen time: <value><unit> (s, ms, us, tau0), at-min or at-max");
  app.add_option("--form", form, "Bell combination: as-printed or chsh");
  app.add_option("--scaling", scaling, "Correlation scaling E = scaling * W");
  app.add_option("--n", n, "Sample count for psi and sigma-xp");
  app.add_option("--t-range", t_range, "Time range LO,HI for scans, e.g. 0tau0,5tau0");
  app.add_flag("--binary", binary, "Also write binary field dumps");

  auto* psi = app.add_subcommand("psi", "Screen wavefunction on a position grid");
  auto* sxp = app.add_subcommand("sigma-xp", "sigma_xp(t) curve at fixed tau");
  auto* ext = app.add_subcommand("extrema", "Interior extrema of sigma_xp(t)");
  auto* wig = app.add_subcommand("wigner", "Wigner map and negativity metrics");
  auto* bell = app.add_subcommand("bell", "Bell-combination map and maximum");
  auto* ver = app.add_subcommand("verify", "Cross-check closed forms against quadrature");
  ver->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  CLI11_PARSE(app, argc, argv);

  try {
    dslit::CommandOptions opt;
    if (!config_path.empty()) opt.run = dslit::load_run_config(config_path);
    if (!out_dir.empty()) opt.run.output_dir = out_dir;
    if (binary) opt.run.binary = true;
    if (!grid.empty()) opt.grid = parse_grid(grid);
    if (!t.empty()) opt.t = dslit::TimeChoice::parse(t);
    if (!form.empty()) opt.run.bell_form = dslit::parse_bell_form(form);
    if (app.count("--scaling")) opt.run.bell_scaling = scaling;
    if (app.count("--n")) opt.n = n;
    if (!t_range.empty()) opt.t_range = parse_range(t_range);
    opt.level = level == "full" ? dslit::VerifyLevel::Full : dslit::VerifyLevel::Quick;

    if (*psi) return dslit::cmd_psi(opt, std::cout, std::cerr);
    if (*sxp) return dslit::cmd_sigma_xp(opt, std::cout, std::cerr);
    if (*ext) return dslit::cmd_extrema(opt, std::cout, std::cerr);
    if (*wig) return dslit::cmd_wigner(opt, std::cout, std::cerr);
    if (*bell) return dslit::cmd_bell(opt, std::cout, std::cerr);
    if (*ver) return dslit::cmd_verify(opt, std::cout, std::cerr);
  } catch (const dslit::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
