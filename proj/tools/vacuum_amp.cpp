#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vacuum/cli/config.hpp"
#include "vacuum/cli/runner.hpp"
#include "vacuum/errors.hpp"

namespace cli = vacuum::cli;

namespace {

const char* type_label(cli::ValueType t) {
  switch (t) {
    case cli::ValueType::number: return "number";
    case cli::ValueType::integer: return "integer";
    case cli::ValueType::string: return "string";
    case cli::ValueType::boolean: return "boolean";
  }
  return "";
}

void print_report(const cli::RunReport& r) {
  std::printf("%-32s %-14s %s (%.2f s)\n", r.scenario.c_str(), cli::to_string(r.kind).c_str(),
              r.ok ? "pass" : (r.error_code.empty() ? "CHECK FAILED" : "ERROR"), r.wall_time);
  if (!r.error_code.empty()) std::printf("    %s: %s\n", r.error_code.c_str(), r.error_message.c_str());
  for (const auto& c : r.checks) {
    if (!c.pass) std::printf("    check %s failed: %s\n", c.name.c_str(), c.detail.c_str());
  }
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw vacuum::SchemaError("--values: '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vacuum amplification scenarios: parametric amplifiers, Unruh and Hawking spectra, "
               "dynamical Casimir effect and SQUID analogue horizons."};
  app.set_version_flag("--version", std::string("vacuum-amp ") + VACUUM_AMP_VERSION);
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out_dir;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run every scenario in a config file");
  run->add_option("config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default $VACUUM_AMP_OUT or ./vacuum-amp-out)");
  run->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);

  std::string axis, values, only;
  auto* sw = app.add_subcommand("sweep", "Run one scenario over a list of values of a parameter");
  sw->add_option("config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  sw->add_option("--axis", axis, "Numeric parameter to vary")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();
  sw->add_option("--scenario", only, "Scenario name when the config holds several");
  sw->add_option("--out", out_dir, "Output directory (default $VACUUM_AMP_OUT or ./vacuum-amp-out)");
  sw->add_option("--jobs", jobs, "Sweep points run in parallel")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list-kinds", "List scenario kinds and their parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (auto kind : cli::all_kinds()) {
        std::printf("%s\n", cli::to_string(kind).c_str());
        for (const auto& k : cli::schema(kind)) {
          std::printf("  %-18s %-8s %-12s %s%s\n", k.name.c_str(), type_label(k.type), k.unit.c_str(),
                      k.doc.c_str(), k.required ? " (required)" : "");
        }
      }
      return 0;
    }

    const auto scenarios = cli::parse_config(config);
    const auto dir = cli::output_directory(out_dir);
    bool all_ok = true;

    if (run->parsed()) {
      for (const auto& r : cli::run_all(scenarios, dir, jobs)) {
        print_report(r);
        all_ok = all_ok && r.ok;
      }
      return all_ok ? 0 : 1;
    }

    const cli::Scenario* target = nullptr;
    for (const auto& s : scenarios) {
      if (only.empty() ? scenarios.size() == 1 : s.name == only) target = &s;
    }
    if (!target) {
      std::fprintf(stderr, "sweep: name a scenario with --scenario (config holds %zu)\n", scenarios.size());
      return 2;
    }
    const auto reports = cli::sweep(*target, axis, parse_values(values), dir, jobs);
    for (const auto& r : reports) {
      print_report(r);
      all_ok = all_ok && r.ok;
    }
    return all_ok ? 0 : 1;
  } catch (const vacuum::Error& e) {
    std::fprintf(stderr, "%s: %s\n", e.code().c_str(), e.what());
    return 2;
  }
}
