#include "vacuum/cli/runner.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "vacuum/errors.hpp"

namespace vacuum::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

Json rounded(const Json& j) {
  if (j.is_number_float()) return round_significant(j.get<double>());
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = rounded(v);
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(rounded(v));
    return out;
  }
  return j;
}

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

std::string csv_text(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Json report_json(const RunReport& r) {
  Json j = Json::object();
  j["scenario"] = r.scenario;
  j["kind"] = to_string(r.kind);
  j["status"] = r.ok ? "pass" : (r.error_code.empty() ? "check_failed" : "error");
  if (!r.error_code.empty()) j["error"] = {{"code", r.error_code}, {"message", r.error_message}};
  j["outputs"] = r.outputs;
  j["headline"] = rounded(r.headline);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

std::filesystem::path output_directory(const std::optional<std::string>& explicit_dir) {
  if (explicit_dir && !explicit_dir->empty()) return *explicit_dir;
  if (const char* env = std::getenv("VACUUM_AMP_OUT"); env && *env) return env;
  return "vacuum-amp-out";
}

RunReport run_in_memory(const Scenario& s, ScenarioResult* result) {
  RunReport rep;
  rep.scenario = s.name;
  rep.kind = s.kind;
  const auto start = std::chrono::steady_clock::now();
  try {
    ScenarioResult res = execute(s);
    rep.headline = res.headline;
    rep.checks = res.checks;
    rep.ok = std::all_of(res.checks.begin(), res.checks.end(), [](const Check& c) { return c.pass; });
    if (result) *result = std::move(res);
  } catch (const Error& e) {
    rep.error_code = e.code();
    rep.error_message = e.what();
  } catch (const std::exception& e) {
    rep.error_code = "InternalError";
    rep.error_message = e.what();
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  ScenarioResult res;
  RunReport rep = run_in_memory(s, &res);
  std::filesystem::create_directories(out_dir);
  const bool ran = rep.error_code.empty();
  if (ran && s.output.csv) {
    const std::string file = s.name + ".csv";
    write_file(out_dir / file, csv_text(res.table));
    rep.outputs.push_back(file);
  }
  if (s.output.json || !ran) {
    const std::string file = s.name + ".json";
    rep.outputs.push_back(file);
    write_file(out_dir / file, report_json(rep).dump(2) + "\n");
  }
  return rep;
}

std::vector<RunReport> run_all(const std::vector<Scenario>& scenarios, const std::filesystem::path& out_dir,
                               int jobs) {
  std::vector<RunReport> reports(scenarios.size());
  std::filesystem::create_directories(out_dir);
  parallel_for(scenarios.size(), jobs, [&](std::size_t i) { reports[i] = run_scenario(scenarios[i], out_dir); });
  return reports;
}

std::vector<RunReport> sweep(const Scenario& s, const std::string& axis, const std::vector<double>& values,
                             const std::filesystem::path& out_dir, int jobs) {
  const auto& keys = schema(s.kind);
  const auto spec = std::find_if(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == axis; });
  if (spec == keys.end() || (spec->type != ValueType::number && spec->type != ValueType::integer)) {
    throw SchemaError(axis + ": not a numeric parameter of kind " + to_string(s.kind));
  }

  std::vector<RunReport> reports(values.size());
  std::vector<ScenarioResult> results(values.size());
  parallel_for(values.size(), jobs, [&](std::size_t i) {
    Scenario point = s;
    point.name = s.name + "[" + axis + "=" + format_double(values[i]) + "]";
    try {
      if (spec->type == ValueType::integer) {
        if (values[i] != std::floor(values[i])) throw SchemaError(axis + ": expected an integer value");
        point.parameters[axis] = static_cast<long>(values[i]);
      } else {
        point.parameters[axis] = values[i];
      }
      validate_parameters(point);
      reports[i] = run_in_memory(point, &results[i]);
    } catch (const Error& e) {
      reports[i].scenario = point.name;
      reports[i].kind = s.kind;
      reports[i].error_code = e.code();
      reports[i].error_message = e.what();
    }
  });

  if (values.empty()) return reports;
  std::filesystem::create_directories(out_dir);
  Table combined;
  combined.header.push_back(axis);
  const auto& cols = csv_columns(s.kind);
  combined.header.insert(combined.header.end(), cols.begin(), cols.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!reports[i].error_code.empty()) continue;
    for (const auto& row : results[i].table.rows) {
      std::vector<double> r{values[i]};
      r.insert(r.end(), row.begin(), row.end());
      combined.rows.push_back(std::move(r));
    }
  }
  const std::string stem = s.name + "_sweep_" + axis;
  write_file(out_dir / (stem + ".csv"), csv_text(combined));
  Json list = Json::array();
  for (auto& r : reports) {
    r.outputs = {stem + ".csv", stem + ".json"};
    list.push_back(report_json(r));
  }
  write_file(out_dir / (stem + ".json"), list.dump(2) + "\n");
  return reports;
}

}  // namespace vacuum::cli
