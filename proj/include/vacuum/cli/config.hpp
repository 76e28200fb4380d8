#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace vacuum::cli {

using Json = nlohmann::ordered_json;

enum class Kind { paramp, quench, swing, unruh, blackhole, dce_cavity, dce_receding, squid_horizon };

const std::vector<Kind>& all_kinds();
std::string to_string(Kind kind);
Kind kind_from_string(const std::string& name);  // SchemaError on unknown names

struct OutputSpec {
  bool csv = true;
  bool json = true;
};

struct Scenario {
  std::string name;
  Kind kind = Kind::paramp;
  Json parameters = Json::object();  // validated, defaults filled in
  OutputSpec output;
  std::filesystem::path base_dir;   // directory of the config file, for relative references
};

enum class ValueType { number, integer, string, boolean };

struct KeySpec {
  std::string name;
  ValueType type;
  bool required;
  Json fallback;     // used when absent and not required; null leaves the key absent
  std::string unit;
  std::string doc;
};

const std::vector<KeySpec>& schema(Kind kind);

// Checks one scenario's parameters against its kind's schema and fills in
// defaults. Throws SchemaError naming the offending key.
void validate_parameters(Scenario& s);

// Config grammar (JSON):
//   { "scenarios": [ { "name": str, "kind": str,
//                      "parameters": { ... },
//                      "output": { "csv": bool, "json": bool } } ] }
std::vector<Scenario> parse_config_text(const std::string& text, const std::filesystem::path& base_dir = ".");
std::vector<Scenario> parse_config(const std::filesystem::path& path);

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset);

}  // namespace vacuum::cli
