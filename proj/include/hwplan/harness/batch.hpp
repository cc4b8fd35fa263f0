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

#ifndef HWPLAN__HARNESS__BATCH_HPP_
#define HWPLAN__HARNESS__BATCH_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "hwplan/harness/simulation.hpp"

namespace hwplan::harness
{

struct RuntimeStats
{
  double mean{0.0};
  double median{0.0};
  double p95{0.0};  // nearest rank

  /// Zeros for an empty sample.
  static RuntimeStats of(std::vector<double> samples);
};

struct NamedScenario
{
  std::string id;
  core::Scenario scenario;
};

struct BatchEntry
{
  std::string scenario_id;
  bool success{false};
  int cycles{0};
  int successful_cycles{0};
  int violations{0};
  RuntimeStats cycle_ms;
};

struct BatchReport
{
  int scenario_count{0};
  double scenario_success_rate{0.0};
  double cycle_success_rate{0.0};
  int total_cycles{0};
  RuntimeStats cycle_ms;
  RuntimeStats optimization_ms;
  std::vector<BatchEntry> entries;  // input order
  std::vector<ScenarioReport> scenarios;
};

/// Runs every scenario on up to \p workers threads. Aggregation follows input order, so every
/// field except the timings is independent of the worker count. Throws std::invalid_argument for
/// an empty list.
BatchReport run_batch(
  const std::vector<NamedScenario> & scenarios, const core::PlannerConfig & config,
  int workers = 1, const RunOptions & options = {});

enum class ReportFormat { kDelimitedTable, kStructuredText };

struct ReportOptions
{
  bool timing{true};  // false drops wall-clock fields, for run-to-run comparisons
};

/// CSV, one row per scenario: scenario_id,success,cycles,cycle_success,mean_ms,median_ms,p95_ms.
std::string format_batch_csv(const BatchReport & report, const ReportOptions & options = {});
std::string format_batch_json(const BatchReport & report, const ReportOptions & options = {});

/// CSV per executed sample: t,s,l,heading,v.
std::string format_trajectory_csv(const ScenarioReport & report);
std::string format_scenario_json(const ScenarioReport & report, const ReportOptions & options = {});

/// Writes batch.csv or batch.json into \p dir (created if missing). Returns the written path.
/// Throws std::runtime_error on I/O failure.
std::filesystem::path emit_report(
  const BatchReport & report, ReportFormat format, const std::filesystem::path & dir);

/// Writes trajectory.csv or scenario.json into \p dir.
std::filesystem::path emit_report(
  const ScenarioReport & report, ReportFormat format, const std::filesystem::path & dir);

}  // namespace hwplan::harness

#endif  // HWPLAN__HARNESS__BATCH_HPP_
