#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "dslit/run_config.hpp"
#include "dslit/verify.hpp"

namespace dslit {

/// Screen-time selection: an explicit time, or the time of the sigma_xp
/// minimum or maximum over the configured scan range.
struct TimeChoice {
  enum class Kind { Explicit, AtMin, AtMax };
  Kind kind = Kind::AtMax;
  Quantity value;  // Explicit only

  /// "at-min", "at-max", "0.49tau0", "4.7e-4 s", or a bare number of seconds.
  static TimeChoice parse(const std::string& text);
  /// File-name tag: "tmin", "tmax", or e.g. "t0.49tau0".
  std::string tag() const;
};

struct CommandOptions {
  RunConfig run;
  std::optional<TimeChoice> t;  // overrides run.t
  std::optional<std::pair<std::size_t, std::size_t>> grid;
  std::optional<std::size_t> n;
  std::optional<std::pair<Quantity, Quantity>> t_range;
  VerifyLevel level = VerifyLevel::Quick;
  /// Verification only: the closed form under test.
  CurvatureForm curvature = CurvatureForm::Derived;
};

struct ResolvedTime {
  double seconds = 0.0;
  std::string tag;
};

/// Resolves the screen time and warns on `err` when it lies outside
/// [0, 10 tau0]. Throws std::runtime_error if the requested extremum does not
/// exist in the scan range.
ResolvedTime resolve_time(const CommandOptions& options, std::ostream& err);

// Each command writes its files under run.output_dir, prints a summary on
// `out`, and returns a process exit code.
int cmd_psi(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sigma_xp(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_extrema(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_wigner(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_bell(const CommandOptions& options, std::ostream& out, std::ostream& err);
/// Exit code 0 iff every check passes.
int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace dslit
