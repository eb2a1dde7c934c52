#include "dslit/run_config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dslit/field_io.hpp"

namespace dslit {

namespace {

using json = nlohmann::ordered_json;

struct UnitEntry {
  Dimension dim;
  std::string_view name;
  double factor;
};

constexpr std::array kUnits{
    UnitEntry{Dimension::Length, "m", 1.0},       UnitEntry{Dimension::Length, "mm", 1e-3},
    UnitEntry{Dimension::Length, "um", 1e-6},     UnitEntry{Dimension::Length, "nm", 1e-9},
    UnitEntry{Dimension::Time, "s", 1.0},         UnitEntry{Dimension::Time, "ms", 1e-3},
    UnitEntry{Dimension::Time, "us", 1e-6},       UnitEntry{Dimension::Time, "ns", 1e-9},
    UnitEntry{Dimension::Time, "tau0", 0.0},      UnitEntry{Dimension::Mass, "kg", 1.0},
    UnitEntry{Dimension::Mass, "g", 1e-3},        UnitEntry{Dimension::Wavenumber, "1/m", 1.0},
    UnitEntry{Dimension::Wavenumber, "1/mm", 1e3}, UnitEntry{Dimension::Wavenumber, "1/um", 1e6},
    UnitEntry{Dimension::Wavenumber, "1/nm", 1e9},
};

const UnitEntry* find_unit(Dimension dim, std::string_view name) {
  for (const UnitEntry& u : kUnits) {
    if (u.dim == dim && u.name == name) return &u;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Quantity quantity_from_json(const json& j, Dimension dim, const std::string& field) {
  if (j.is_number()) return Quantity{j.get<double>(), ""};
  if (j.is_string()) return Quantity::parse(j.get<std::string>(), dim, field);
  throw ValidationError(field, "expected a number or a string with units");
}

json quantity_to_json(const Quantity& q) {
  if (q.unit.empty()) return q.value;
  return q.to_string();
}

double number_from_json(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "expected a number");
  return j.get<double>();
}

std::size_t count_from_json(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ValidationError(field, "expected a positive integer");
  }
  return j.get<std::size_t>();
}

/// Visits each key of a section, rejecting unknown ones.
template <typename Fn>
void for_each_key(const json& section, const std::string& prefix, std::initializer_list<std::string_view> known,
                  Fn&& fn) {
  if (!section.is_object()) throw ValidationError(prefix, "expected an object");
  for (auto it = section.begin(); it != section.end(); ++it) {
    const std::string field = prefix + "." + it.key();
    bool ok = false;
    for (std::string_view k : known) ok = ok || k == it.key();
    if (!ok) throw ValidationError(field, "unknown key");
    fn(it.key(), it.value(), field);
  }
}

ValidationError with_prefix(const ValidationError& e, const std::string& prefix) {
  if (e.field().starts_with(prefix)) return e;
  const std::string_view msg = std::string_view(e.what()).substr(e.field().size() + 2);
  return ValidationError(prefix + e.field(), std::string(msg));
}

}  // namespace

Quantity Quantity::parse(std::string_view text, Dimension dim, const std::string& field) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{}) throw ValidationError(field, "cannot parse number in '" + std::string(text) + "'");
  const std::string_view unit = trim(text.substr(static_cast<std::size_t>(ptr - text.data())));
  if (!std::isfinite(value)) throw ValidationError(field, "value must be finite");
  if (!unit.empty() && !find_unit(dim, unit)) {
    throw ValidationError(field, "unit '" + std::string(unit) + "' not valid here");
  }
  return Quantity{value, std::string(unit)};
}

double Quantity::si(Dimension dim, double tau0) const {
  if (unit.empty()) return value;
  const UnitEntry* u = find_unit(dim, unit);
  if (!u) throw ValidationError(unit, "unit not valid for this quantity");
  if (u->name == "tau0") return value * tau0;
  return value * u->factor;
}

std::string Quantity::to_string() const {
  if (unit.empty()) return format_double(value);
  return format_double(value) + " " + unit;
}

std::string_view to_string(BellForm form) {
  return form == BellForm::AsPrinted ? "as-printed" : "chsh";
}

BellForm parse_bell_form(std::string_view text) {
  if (text == "as-printed") return BellForm::AsPrinted;
  if (text == "chsh") return BellForm::StandardCHSH;
  throw ValidationError("bell.form", "expected 'as-printed' or 'chsh', got '" + std::string(text) + "'");
}

double RunConfig::tau0() const {
  const double m = mass.si(Dimension::Mass);
  const double s0 = sigma0.si(Dimension::Length);
  return m * s0 * s0 / kConstants.hbar;
}

ExperimentConfig RunConfig::experiment() const {
  ExperimentConfig c;
  c.mass = mass.si(Dimension::Mass);
  c.sigma0 = sigma0.si(Dimension::Length);
  c.beta = beta.si(Dimension::Length);
  c.d = d.si(Dimension::Length);
  c.rho = rho;
  c.lambda_dB = lambda_dB ? std::optional(lambda_dB->si(Dimension::Length)) : std::nullopt;
  const double t0 = tau0();
  c.tau = tau.si(Dimension::Time, t0);
  c.t = t ? t->si(Dimension::Time, t0) : 0.0;
  c.validate();
  return c;
}

BellSettings RunConfig::bell() const {
  BellSettings s;
  s.x1 = bell_x1.si(Dimension::Length);
  s.k1 = bell_k1.si(Dimension::Wavenumber);
  s.scaling = bell_scaling;
  s.form = bell_form;
  s.validate();
  return s;
}

RunConfig parse_run_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  RunConfig rc;
  for_each_key(root, "config", {"experiment", "output", "grid", "bell", "scan"},
               [&](const std::string& key, const json& sec, const std::string&) {
                 if (key == "experiment") {
                   for_each_key(sec, "experiment", {"mass", "sigma0", "beta", "d", "rho", "lambda_dB", "tau", "t"},
                                [&](const std::string& k, const json& v, const std::string& f) {
                                  if (k == "mass") rc.mass = quantity_from_json(v, Dimension::Mass, f);
                                  if (k == "sigma0") rc.sigma0 = quantity_from_json(v, Dimension::Length, f);
                                  if (k == "beta") rc.beta = quantity_from_json(v, Dimension::Length, f);
                                  if (k == "d") rc.d = quantity_from_json(v, Dimension::Length, f);
                                  if (k == "rho") rc.rho = number_from_json(v, f);
                                  if (k == "lambda_dB") {
                                    rc.lambda_dB = v.is_null() ? std::nullopt
                                                               : std::optional(quantity_from_json(v, Dimension::Length, f));
                                  }
                                  if (k == "tau") rc.tau = quantity_from_json(v, Dimension::Time, f);
                                  if (k == "t") rc.t = quantity_from_json(v, Dimension::Time, f);
                                });
                 } else if (key == "output") {
                   for_each_key(sec, "output", {"dir", "binary"},
                                [&](const std::string& k, const json& v, const std::string& f) {
                                  if (k == "dir") {
                                    if (!v.is_string()) throw ValidationError(f, "expected a string");
                                    rc.output_dir = v.get<std::string>();
                                  }
                                  if (k == "binary") {
                                    if (!v.is_boolean()) throw ValidationError(f, "expected true or false");
                                    rc.binary = v.get<bool>();
                                  }
                                });
                 } else if (key == "grid") {
                   for_each_key(sec, "grid", {"nx", "nk"},
                                [&](const std::string& k, const json& v, const std::string& f) {
                                  (k == "nx" ? rc.grid_nx : rc.grid_nk) = count_from_json(v, f);
                                });
                 } else if (key == "bell") {
                   for_each_key(sec, "bell", {"x1", "k1", "scaling", "form"},
                                [&](const std::string& k, const json& v, const std::string& f) {
                                  if (k == "x1") rc.bell_x1 = quantity_from_json(v, Dimension::Length, f);
                                  if (k == "k1") rc.bell_k1 = quantity_from_json(v, Dimension::Wavenumber, f);
                                  if (k == "scaling") rc.bell_scaling = number_from_json(v, f);
                                  if (k == "form") {
                                    if (!v.is_string()) throw ValidationError(f, "expected a string");
                                    rc.bell_form = parse_bell_form(v.get<std::string>());
                                  }
                                });
                 } else if (key == "scan") {
                   for_each_key(sec, "scan", {"t_min", "t_max", "n"},
                                [&](const std::string& k, const json& v, const std::string& f) {
                                  if (k == "t_min") rc.scan_t_lo = quantity_from_json(v, Dimension::Time, f);
                                  if (k == "t_max") rc.scan_t_hi = quantity_from_json(v, Dimension::Time, f);
                                  if (k == "n") rc.scan_n = count_from_json(v, f);
                                });
                 }
               });

  // Surface physical and numerical violations with config paths.
  try {
    rc.experiment();
  } catch (const ValidationError& e) {
    throw with_prefix(e, "experiment.");
  }
  try {
    rc.bell();
  } catch (const ValidationError& e) {
    throw with_prefix(e, "bell.");
  }
  const double t0 = rc.tau0();
  if (rc.scan_n < 2) throw ValidationError("scan.n", "need at least 2 samples");
  if (!(rc.scan_t_lo.si(Dimension::Time, t0) >= 0.0 &&
        rc.scan_t_hi.si(Dimension::Time, t0) > rc.scan_t_lo.si(Dimension::Time, t0))) {
    throw ValidationError("scan.t_max", "need 0 <= t_min < t_max");
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string dump_run_config(const RunConfig& rc) {
  json root;
  json& ex = root["experiment"];
  ex["mass"] = quantity_to_json(rc.mass);
  ex["sigma0"] = quantity_to_json(rc.sigma0);
  ex["beta"] = quantity_to_json(rc.beta);
  ex["d"] = quantity_to_json(rc.d);
  ex["rho"] = rc.rho;
  ex["lambda_dB"] = rc.lambda_dB ? quantity_to_json(*rc.lambda_dB) : json(nullptr);
  ex["tau"] = quantity_to_json(rc.tau);
  if (rc.t) ex["t"] = quantity_to_json(*rc.t);
  root["output"] = {{"dir", rc.output_dir.string()}, {"binary", rc.binary}};
  if (rc.grid_nx || rc.grid_nk) {
    json& g = root["grid"];
    if (rc.grid_nx) g["nx"] = *rc.grid_nx;
    if (rc.grid_nk) g["nk"] = *rc.grid_nk;
  }
  root["bell"] = {{"x1", quantity_to_json(rc.bell_x1)},
                  {"k1", quantity_to_json(rc.bell_k1)},
                  {"scaling", rc.bell_scaling},
                  {"form", std::string(to_string(rc.bell_form))}};
  root["scan"] = {{"t_min", quantity_to_json(rc.scan_t_lo)},
                  {"t_max", quantity_to_json(rc.scan_t_hi)},
                  {"n", rc.scan_n}};
  return root.dump(2) + "\n";
}

}  // namespace dslit
