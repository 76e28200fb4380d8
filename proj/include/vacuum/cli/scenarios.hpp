#pragma once

#include <string>
#include <vector>

#include "vacuum/cli/config.hpp"

namespace vacuum::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct ScenarioResult {
  Table table;
  Json headline = Json::object();
  std::vector<Check> checks;
};

// CSV columns per kind.
const std::vector<std::string>& csv_columns(Kind kind);

// Runs one validated scenario. Library errors propagate to the caller.
ScenarioResult execute(const Scenario& s);

}  // namespace vacuum::cli
