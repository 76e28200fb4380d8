#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vacuum/cli/config.hpp"
#include "vacuum/cli/scenarios.hpp"

namespace vacuum::cli {

struct RunReport {
  std::string scenario;
  Kind kind = Kind::paramp;
  bool ok = false;              // ran without error and every check passed
  std::string error_code;       // empty when the run itself succeeded
  std::string error_message;
  double wall_time = 0.0;       // s; printed, never written to files
  std::vector<std::string> outputs;  // file names inside the output directory
  Json headline = Json::object();
  std::vector<Check> checks;
};

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
// v rounded to `digits` significant digits.
double round_significant(double v, int digits = 12);

std::string csv_text(const Table& table);
Json report_json(const RunReport& report);

// Output directory: explicit value, else $VACUUM_AMP_OUT, else ./vacuum-amp-out.
std::filesystem::path output_directory(const std::optional<std::string>& explicit_dir);

// Runs without writing anything; errors are captured into the report.
RunReport run_in_memory(const Scenario& s, ScenarioResult* result = nullptr);

// Runs and writes <name>.csv / <name>.json. The JSON report is written even
// when the scenario fails.
RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

std::vector<RunReport> run_all(const std::vector<Scenario>& scenarios, const std::filesystem::path& out_dir,
                               int jobs = 1);

// One run per value with parameters[axis] replaced. Writes a combined
// <name>_sweep_<axis>.csv (axis first) and a JSON list of reports.
std::vector<RunReport> sweep(const Scenario& s, const std::string& axis, const std::vector<double>& values,
                             const std::filesystem::path& out_dir, int jobs = 1);

}  // namespace vacuum::cli
