// Copyright 2026 The hwplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hwplan/harness/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace hwplan::harness
{

namespace
{

std::string fixed(double value, int digits = 6)
{
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

nlohmann::ordered_json stats_json(const RuntimeStats & s)
{
  return {{"mean_ms", s.mean}, {"median_ms", s.median}, {"p95_ms", s.p95}};
}

void write_file(const std::filesystem::path & path, const std::string & text)
{
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace

RuntimeStats RuntimeStats::of(std::vector<double> samples)
{
  RuntimeStats s;
  if (samples.empty()) {
    return s;
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  s.median = n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = samples[std::max<std::size_t>(rank, 1) - 1];
  return s;
}

BatchReport run_batch(
  const std::vector<NamedScenario> & scenarios, const core::PlannerConfig & config, int workers,
  const RunOptions & options)
{
  if (scenarios.empty()) {
    throw std::invalid_argument("run_batch: empty scenario list");
  }
  BatchReport report;
  report.scenarios.resize(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        report.scenarios[i] = run_scenario(scenarios[i].scenario, config, options);
        report.scenarios[i].id = scenarios[i].id;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads =
    std::clamp(workers, 1, static_cast<int>(std::min<std::size_t>(scenarios.size(), 256)));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back(work);
    }
    for (auto & th : pool) {
      th.join();
    }
  }
  for (const auto & e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }

  std::vector<double> all_cycles;
  std::vector<double> all_opt;
  int successes = 0;
  int good_cycles = 0;
  for (const auto & sr : report.scenarios) {
    BatchEntry entry;
    entry.scenario_id = sr.id;
    entry.success = sr.scenario_success;
    entry.cycles = static_cast<int>(sr.cycles.size());
    entry.successful_cycles = sr.successful_cycles();
    entry.violations = static_cast<int>(sr.violations.size());
    std::vector<double> cycle_ms;
    for (const auto & c : sr.cycles) {
      cycle_ms.push_back(c.timings.total_ms);
      all_cycles.push_back(c.timings.total_ms);
      all_opt.push_back(c.timings.optimization_ms);
    }
    entry.cycle_ms = RuntimeStats::of(std::move(cycle_ms));
    successes += entry.success ? 1 : 0;
    good_cycles += entry.successful_cycles;
    report.total_cycles += entry.cycles;
    report.entries.push_back(std::move(entry));
  }
  report.scenario_count = static_cast<int>(scenarios.size());
  report.scenario_success_rate = static_cast<double>(successes) / report.scenario_count;
  report.cycle_success_rate =
    report.total_cycles > 0 ? static_cast<double>(good_cycles) / report.total_cycles : 0.0;
  report.cycle_ms = RuntimeStats::of(std::move(all_cycles));
  report.optimization_ms = RuntimeStats::of(std::move(all_opt));
  return report;
}

std::string format_batch_csv(const BatchReport & report, const ReportOptions & options)
{
  std::ostringstream os;
  os << "scenario_id,success,cycles,cycle_success,mean_ms,median_ms,p95_ms\n";
  for (const auto & e : report.entries) {
    const double rate = e.cycles > 0 ? static_cast<double>(e.successful_cycles) / e.cycles : 0.0;
    os << e.scenario_id << ',' << (e.success ? 1 : 0) << ',' << e.cycles << ',' << fixed(rate)
       << ',';
    if (options.timing) {
      os << fixed(e.cycle_ms.mean, 3) << ',' << fixed(e.cycle_ms.median, 3) << ','
         << fixed(e.cycle_ms.p95, 3);
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

std::string format_batch_json(const BatchReport & report, const ReportOptions & options)
{
  nlohmann::ordered_json j;
  j["scenario_count"] = report.scenario_count;
  j["scenario_success_rate"] = report.scenario_success_rate;
  j["cycle_success_rate"] = report.cycle_success_rate;
  j["total_cycles"] = report.total_cycles;
  if (options.timing) {
    j["cycle_runtime"] = stats_json(report.cycle_ms);
    j["optimization_runtime"] = stats_json(report.optimization_ms);
  }
  auto & rows = j["scenarios"] = nlohmann::ordered_json::array();
  for (const auto & e : report.entries) {
    nlohmann::ordered_json row{
      {"scenario_id", e.scenario_id}, {"success", e.success}, {"cycles", e.cycles},
      {"successful_cycles", e.successful_cycles}, {"violations", e.violations}};
    if (options.timing) {
      row["cycle_runtime"] = stats_json(e.cycle_ms);
    }
    rows.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string format_trajectory_csv(const ScenarioReport & report)
{
  std::ostringstream os;
  os << "t,s,l,heading,v\n";
  for (const auto & p : report.executed) {
    os << fixed(p.t, 3) << ',' << fixed(p.s) << ',' << fixed(p.l, 9) << ',' << fixed(p.heading, 9)
       << ',' << fixed(p.v) << '\n';
  }
  return os.str();
}

std::string format_scenario_json(const ScenarioReport & report, const ReportOptions & options)
{
  nlohmann::ordered_json j;
  j["scenario_id"] = report.id;
  j["success"] = report.scenario_success;
  j["failure"] = report.failure;
  j["peak_lateral_accel"] = report.peak_lateral_accel;
  j["peak_heading"] = report.peak_heading;
  auto & viol = j["violations"] = nlohmann::ordered_json::array();
  for (const auto & v : report.violations) {
    viol.push_back({{"t", v.t}, {"sv_id", v.sv_id}});
  }
  auto & cycles = j["cycles"] = nlohmann::ordered_json::array();
  for (const auto & c : report.cycles) {
    nlohmann::ordered_json row{
      {"t", c.t}, {"status", planner::to_string(c.status)}, {"K", c.K}, {"nodes", c.nodes},
      {"success", c.success}, {"message", c.message}};
    if (options.timing) {
      row["total_ms"] = c.timings.total_ms;
      row["profile_ms"] = c.timings.profile_ms;
      row["corridor_ms"] = c.timings.corridor_ms;
      row["optimization_ms"] = c.timings.optimization_ms;
    }
    cycles.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::filesystem::path emit_report(
  const BatchReport & report, ReportFormat format, const std::filesystem::path & dir)
{
  const bool table = format == ReportFormat::kDelimitedTable;
  const auto path = dir / (table ? "batch.csv" : "batch.json");
  write_file(path, table ? format_batch_csv(report) : format_batch_json(report));
  return path;
}

std::filesystem::path emit_report(
  const ScenarioReport & report, ReportFormat format, const std::filesystem::path & dir)
{
  const bool table = format == ReportFormat::kDelimitedTable;
  const auto path = dir / (table ? "trajectory.csv" : "scenario.json");
  write_file(path, table ? format_trajectory_csv(report) : format_scenario_json(report));
  return path;
}

}  // namespace hwplan::harness
