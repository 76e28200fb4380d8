#include "vacuum/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vacuum/errors.hpp"

namespace vacuum::cli {

namespace {

enum class Constraint { none, positive, non_negative, below_half, open_unit, choice };

struct Rule {
  KeySpec spec;
  Constraint constraint = Constraint::none;
  std::vector<std::string> choices;
};

Rule num(std::string name, bool required, Json fallback, std::string unit, Constraint c, std::string doc) {
  return {{std::move(name), ValueType::number, required, std::move(fallback), std::move(unit), std::move(doc)}, c, {}};
}

Rule integer(std::string name, Json fallback, Constraint c, std::string doc) {
  return {{std::move(name), ValueType::integer, false, std::move(fallback), "", std::move(doc)}, c, {}};
}

Rule text(std::string name, Json fallback, std::vector<std::string> choices, std::string doc) {
  const Constraint c = choices.empty() ? Constraint::none : Constraint::choice;
  return {{std::move(name), ValueType::string, false, std::move(fallback), "", std::move(doc)}, c, std::move(choices)};
}

const std::map<Kind, std::vector<Rule>>& rules() {
  static const std::map<Kind, std::vector<Rule>> table = [] {
    using C = Constraint;
    std::map<Kind, std::vector<Rule>> t;
    t[Kind::paramp] = {
        num("eta", true, nullptr, "1/s", C::non_negative, "pump strength"),
        num("t", true, nullptr, "s", C::non_negative, "interaction time"),
        num("omega_s", false, 3.7699111843077517e10, "rad/s", C::positive, "signal frequency"),
        integer("samples", 101, C::positive, "rows in the time series"),
    };
    t[Kind::quench] = {
        num("omega_in", true, nullptr, "rad/s", C::positive, "initial frequency"),
        num("omega_out", true, nullptr, "rad/s", C::positive, "final frequency"),
        text("profile", "sudden_step", {"sudden_step", "tanh_ramp"}, "switching profile"),
        num("ramp_time", false, 0.0, "s", C::non_negative, "ramp width; 0 means 1e-4 / omega for a step"),
        num("mass", false, 1.0, "kg", C::positive, "oscillator mass"),
        num("tol", false, 1e-10, "", C::positive, "integrator tolerance"),
        integer("periods", 10, C::positive, "half-window in periods of omega_in"),
    };
    t[Kind::swing] = {
        num("theta0", false, 0.1, "rad", C::none, "initial angle"),
        num("L0", false, 0.0, "kg m^2/s", C::none, "initial angular momentum"),
        num("m", false, 20.0, "kg", C::positive, "mass"),
        num("l", false, 2.5, "m", C::positive, "length"),
        num("epsilon", false, 0.05, "1/s", C::non_negative, "frequency modulation depth"),
        num("t_end", false, 60.0, "s", C::positive, "duration"),
        integer("samples", 201, C::positive, "rows in the time series"),
    };
    t[Kind::unruh] = {
        num("accel", true, nullptr, "m/s^2", C::positive, "proper acceleration"),
        num("band_lo", false, 0.5, "alpha", C::positive, "fit band lower edge"),
        num("band_hi", false, 3.0, "alpha", C::positive, "fit band upper edge"),
        num("probe", false, 1.0, "alpha", C::positive, "probe frequency"),
        integer("log2_samples", 0, C::non_negative, "FFT size exponent, 0 for automatic"),
    };
    t[Kind::blackhole] = {
        num("mass", true, nullptr, "kg", C::positive, "black hole mass"),
        integer("points_per_decade", 2, C::positive, "radial sampling density"),
    };
    t[Kind::dce_cavity] = {
        num("z0", false, 0.01, "m", C::positive, "mirror separation"),
        num("epsilon", false, 0.01, "", C::open_unit, "relative drive amplitude"),
        num("drive_frequency", false, nullptr, "rad/s", C::positive, "drive frequency, default 2 omega_1"),
        integer("drive_cycles", 8, C::positive, "drive duration in half drive periods"),
        integer("n_max", 32, C::positive, "retained modes"),
        integer("grid_divisions", 512, C::positive, "Moore grid steps per z0"),
        num("ramp_periods", false, 0.0, "", C::non_negative, "half-cosine ramp length in drive periods"),
        text("trajectory", "sinusoidal", {"sinusoidal", "static"}, "mirror motion"),
    };
    t[Kind::dce_receding] = {
        num("kappa", true, nullptr, "1/s", C::positive, "recession rate"),
        num("A", false, nullptr, "s", C::positive, "trajectory constant, default 1 / (2 kappa)"),
        num("probe_over_kappa", false, 1e5, "", C::positive, "probe frequency"),
        num("band_lo", false, 0.5, "kappa", C::positive, "fit band lower edge"),
        num("band_hi", false, 3.0, "kappa", C::positive, "fit band upper edge"),
    };
    t[Kind::squid_horizon] = {
        text("reference", nullptr, {}, "parameter file, relative to the config"),
        num("I_c", false, nullptr, "A", C::positive, "junction critical current"),
        num("C_J", false, nullptr, "F", C::positive, "junction capacitance"),
        num("C_0", false, nullptr, "F", C::positive, "ground capacitance per cell"),
        num("dx", false, nullptr, "m", C::positive, "cell spacing"),
        num("L_0", false, nullptr, "H/m", C::positive, "waveguide inductance per length"),
        num("amplitude", false, nullptr, "Phi_0", C::below_half, "pulse flux amplitude"),
        num("velocity_fraction", false, nullptr, "c_s(0)", C::positive, "pulse speed"),
        num("steepness", false, nullptr, "1/m", C::positive, "pulse edge steepness"),
        integer("samples", 201, C::positive, "rows in the profile"),
        num("span", false, 10.0, "1/steepness", C::positive, "half-width of the sampled profile"),
    };
    return t;
  }();
  return table;
}

const std::vector<std::string> kSquidRequired = {"I_c", "C_J", "C_0", "dx", "L_0", "amplitude",
                                                 "velocity_fraction", "steepness"};

std::string type_name(ValueType t) {
  switch (t) {
    case ValueType::number: return "a number";
    case ValueType::integer: return "an integer";
    case ValueType::string: return "a string";
    case ValueType::boolean: return "a boolean";
  }
  return "a value";
}

void check_value(const Rule& rule, const Json& v, const std::string& where) {
  const std::string key = where + rule.spec.name;
  switch (rule.spec.type) {
    case ValueType::number:
      if (!v.is_number()) throw SchemaError(key + ": expected " + type_name(rule.spec.type));
      if (!std::isfinite(v.get<double>())) throw SchemaError(key + ": must be finite");
      break;
    case ValueType::integer:
      if (!v.is_number_integer()) throw SchemaError(key + ": expected " + type_name(rule.spec.type));
      break;
    case ValueType::string:
      if (!v.is_string()) throw SchemaError(key + ": expected " + type_name(rule.spec.type));
      break;
    case ValueType::boolean:
      if (!v.is_boolean()) throw SchemaError(key + ": expected " + type_name(rule.spec.type));
      break;
  }
  if (rule.constraint == Constraint::choice) {
    const auto s = v.get<std::string>();
    if (std::find(rule.choices.begin(), rule.choices.end(), s) == rule.choices.end()) {
      std::string allowed;
      for (const auto& c : rule.choices) allowed += (allowed.empty() ? "" : ", ") + c;
      throw SchemaError(key + ": '" + s + "' is not one of " + allowed);
    }
    return;
  }
  if (!v.is_number()) return;
  const double x = v.get<double>();
  switch (rule.constraint) {
    case Constraint::positive:
      if (!(x > 0)) throw SchemaError(key + ": must be positive");
      break;
    case Constraint::non_negative:
      if (!(x >= 0)) throw SchemaError(key + ": must be non-negative");
      break;
    case Constraint::below_half:
      if (!(x >= 0 && x < 0.5)) throw SchemaError(key + ": must lie in [0, 0.5) flux quanta");
      break;
    case Constraint::open_unit:
      if (!(std::abs(x) < 1)) throw SchemaError(key + ": magnitude must be below 1");
      break;
    default:
      break;
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

void merge_squid_reference(Scenario& s) {
  Json& p = s.parameters;
  if (!p.contains("reference")) return;
  const std::filesystem::path ref = s.base_dir / p["reference"].get<std::string>();
  const Json file = read_json_file(ref);
  if (!file.is_object()) throw SchemaError("reference: " + ref.string() + " is not an object");
  for (const auto& [key, value] : file.items()) {
    if (key == "provenance") continue;
    if (std::find(kSquidRequired.begin(), kSquidRequired.end(), key) == kSquidRequired.end()) {
      throw SchemaError("reference." + key + ": unknown key in " + ref.string());
    }
    if (!p.contains(key)) p[key] = value;
  }
}

}  // namespace

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds{Kind::paramp,    Kind::quench,     Kind::swing,        Kind::unruh,
                                       Kind::blackhole, Kind::dce_cavity, Kind::dce_receding, Kind::squid_horizon};
  return kinds;
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::paramp: return "paramp";
    case Kind::quench: return "quench";
    case Kind::swing: return "swing";
    case Kind::unruh: return "unruh";
    case Kind::blackhole: return "blackhole";
    case Kind::dce_cavity: return "dce_cavity";
    case Kind::dce_receding: return "dce_receding";
    case Kind::squid_horizon: return "squid_horizon";
  }
  return "unknown";
}

Kind kind_from_string(const std::string& name) {
  for (Kind k : all_kinds()) {
    if (to_string(k) == name) return k;
  }
  throw SchemaError("kind: unknown scenario kind '" + name + "'");
}

const std::vector<KeySpec>& schema(Kind kind) {
  static const std::map<Kind, std::vector<KeySpec>> specs = [] {
    std::map<Kind, std::vector<KeySpec>> out;
    for (const auto& [k, list] : rules()) {
      for (const auto& r : list) out[k].push_back(r.spec);
    }
    return out;
  }();
  return specs.at(kind);
}

void validate_parameters(Scenario& s) {
  const auto& list = rules().at(s.kind);
  const std::string where = "parameters.";
  if (!s.parameters.is_object()) throw SchemaError("parameters: expected an object");
  for (const auto& [key, value] : s.parameters.items()) {
    const bool known = std::any_of(list.begin(), list.end(), [&](const Rule& r) { return r.spec.name == key; });
    if (!known) throw SchemaError(where + key + ": unknown key for kind " + to_string(s.kind));
  }
  if (s.kind == Kind::squid_horizon && s.parameters.contains("reference")) {
    if (!s.parameters["reference"].is_string()) throw SchemaError(where + "reference: expected a string");
    merge_squid_reference(s);
  }
  for (const auto& rule : list) {
    if (!s.parameters.contains(rule.spec.name)) {
      if (rule.spec.required) throw SchemaError(where + rule.spec.name + ": required key is missing");
      if (!rule.spec.fallback.is_null()) s.parameters[rule.spec.name] = rule.spec.fallback;
      continue;
    }
    check_value(rule, s.parameters[rule.spec.name], where);
  }
  if (s.kind == Kind::squid_horizon) {
    for (const auto& key : kSquidRequired) {
      if (!s.parameters.contains(key)) throw SchemaError(where + key + ": required (inline or via reference)");
    }
  }
  if (s.kind == Kind::unruh || s.kind == Kind::dce_receding) {
    if (!(s.parameters["band_hi"].get<double>() > s.parameters["band_lo"].get<double>())) {
      throw SchemaError(where + "band_hi: must exceed band_lo");
    }
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<Scenario> parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) throw SchemaError("config: top level must be an object");
  for (const auto& [key, value] : root.items()) {
    if (key != "scenarios") throw SchemaError(key + ": unknown top-level key");
  }
  if (!root.contains("scenarios") || !root["scenarios"].is_array()) {
    throw SchemaError("scenarios: required array is missing");
  }

  std::vector<Scenario> out;
  std::set<std::string> names;
  std::size_t index = 0;
  for (const auto& entry : root["scenarios"]) {
    const std::string where = "scenarios[" + std::to_string(index++) + "].";
    if (!entry.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [key, value] : entry.items()) {
      if (key != "name" && key != "kind" && key != "parameters" && key != "output") {
        throw SchemaError(where + key + ": unknown key");
      }
    }
    Scenario s;
    s.base_dir = base_dir;
    if (!entry.contains("name") || !entry["name"].is_string()) throw SchemaError(where + "name: required string");
    s.name = entry["name"].get<std::string>();
    if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) {
      throw SchemaError(where + "name: must be a non-empty file-safe string");
    }
    if (!names.insert(s.name).second) throw SchemaError(where + "name: duplicate scenario name '" + s.name + "'");
    if (!entry.contains("kind") || !entry["kind"].is_string()) throw SchemaError(where + "kind: required string");
    s.kind = kind_from_string(entry["kind"].get<std::string>());
    if (entry.contains("parameters")) s.parameters = entry["parameters"];
    if (entry.contains("output")) {
      const Json& o = entry["output"];
      if (!o.is_object()) throw SchemaError(where + "output: expected an object");
      for (const auto& [key, value] : o.items()) {
        if (key != "csv" && key != "json") throw SchemaError(where + "output." + key + ": unknown key");
        if (!value.is_boolean()) throw SchemaError(where + "output." + key + ": expected a boolean");
      }
      s.output.csv = o.value("csv", true);
      s.output.json = o.value("json", true);
    }
    validate_parameters(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Scenario> parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace vacuum::cli
