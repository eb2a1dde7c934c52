#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dslit/bell.hpp"
#include "dslit/core_params.hpp"

namespace dslit {

enum class Dimension { Length, Time, Mass, Wavenumber };

/// A number with the unit it was written in. An empty unit means SI.
/// Accepted units:
///   length      m mm um nm
///   time        s ms us ns tau0
///   mass        kg g
///   wavenumber  1/m 1/mm 1/um 1/nm
struct Quantity {
  double value = 0.0;
  std::string unit;

  /// "7.8 um", "7.8um", "18 tau0" or a bare number.
  static Quantity parse(std::string_view text, Dimension dim, const std::string& field);
  /// SI value; tau0 is only consulted for time quantities in units of tau0.
  double si(Dimension dim, double tau0 = 0.0) const;
  std::string to_string() const;
  bool operator==(const Quantity&) const = default;
};

/// User-facing configuration of a run. Quantities keep their input units so
/// that writing the config back reproduces what was read.
struct RunConfig {
  Quantity mass{1.67e-27, "kg"};
  Quantity sigma0{7.8, "um"};
  Quantity beta{7.8, "um"};
  Quantity d{125, "um"};
  double rho = -1.0;
  std::optional<Quantity> lambda_dB = Quantity{2, "nm"};
  Quantity tau{18, "tau0"};
  std::optional<Quantity> t;  // unset: commands fall back to their own default

  std::filesystem::path output_dir = "out";
  bool binary = false;

  std::optional<std::size_t> grid_nx;
  std::optional<std::size_t> grid_nk;

  Quantity bell_x1{1, "um"};
  Quantity bell_k1{1e3, "1/m"};
  double bell_scaling = 3.141592653589793;
  BellForm bell_form = BellForm::AsPrinted;

  Quantity scan_t_lo{0.01, "tau0"};
  Quantity scan_t_hi{5.0, "tau0"};
  std::size_t scan_n = 501;

  double tau0() const;
  /// SI experiment; t is resolved when present, else left at 0. Validated.
  ExperimentConfig experiment() const;
  BellSettings bell() const;
};

/// Parses JSON text. Unknown keys and bad values raise ValidationError naming
/// the field, e.g. "experiment.sigma0".
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);
std::string dump_run_config(const RunConfig& config);

std::string_view to_string(BellForm form);
BellForm parse_bell_form(std::string_view text);

}  // namespace dslit
