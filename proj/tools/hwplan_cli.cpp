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

// hwplan command line: single-cycle planning, closed-loop simulation, batches and scenario
// generation. Exit codes: 0 success, 1 planning failure, 2 input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hwplan/core/generator.hpp"
#include "hwplan/core/scenario_io.hpp"
#include "hwplan/harness/batch.hpp"
#include "hwplan/harness/simulation.hpp"
#include "hwplan/planner/plan_cycle.hpp"

namespace
{

using namespace hwplan;

constexpr int kExitOk = 0;
constexpr int kExitPlanningFailure = 1;
constexpr int kExitInputError = 2;

struct GlobalOptions
{
  std::string config_path;
  std::string predictor{"replay"};
  std::string speed{"gap"};
};

core::PlannerConfig load_planner_config(const GlobalOptions & g)
{
  core::PlannerConfig config;
  if (!g.config_path.empty()) {
    config = core::load_config(core::read_text_file(g.config_path));
  }
  config.validate();
  return config;
}

harness::RunOptions run_options(const GlobalOptions & g)
{
  harness::RunOptions options;
  if (g.predictor == "replay") {
    options.predictor.mode = harness::PredictorMode::kGroundTruthReplay;
  } else if (g.predictor == "constant-velocity") {
    options.predictor.mode = harness::PredictorMode::kConstantVelocity;
  } else {
    throw core::InputError("unknown predictor: " + g.predictor);
  }
  if (g.speed == "gap") {
    options.profile = harness::ProfileMode::kGapKeeping;
  } else if (g.speed == "constant") {
    options.profile = harness::ProfileMode::kConstantSpeed;
  } else {
    throw core::InputError("unknown speed profile: " + g.speed);
  }
  return options;
}

void apply_mode(const std::string & mode, core::PlannerConfig & config)
{
  if (mode == "bnb") {
    config.mode = core::SolveMode::kBranchAndBound;
  } else if (mode == "convex") {
    config.mode = core::SolveMode::kConvexEquivalent;
  } else {
    throw core::InputError("unknown mode: " + mode);
  }
}

/// Captured planner snapshot of the cycle starting at t.
struct Snapshot
{
  planner::CycleInput input;
  std::optional<planner::PlanOutcome> outcome;
};

/// Drives the closed loop up to the cycle that starts at t and records its input.
Snapshot snapshot_at(
  const core::Scenario & scenario, const core::PlannerConfig & config,
  const harness::RunOptions & base, double t)
{
  const double cycles = t / config.dt_replan;
  if (t < 0.0 || std::abs(cycles - std::round(cycles)) > 1e-6) {
    throw core::InputError("--t must be a non-negative multiple of dt_replan");
  }
  Snapshot snap;
  harness::RunOptions options = base;
  options.observer = [&](const planner::CycleInput & in, const planner::PlanOutcome & out) {
    if (!snap.outcome && std::abs(in.t0 - t) < 1e-9) {
      snap.input = in;
      snap.outcome = out;
    }
  };
  harness::run_scenario(scenario, config, options);
  if (!snap.outcome) {
    throw core::InputError("no planning cycle at t = " + std::to_string(t));
  }
  return snap;
}

std::unique_ptr<planner::ProfileProvider> make_provider(
  const GlobalOptions & g, const std::string & profile_path, const core::PlannerConfig & config)
{
  if (!profile_path.empty()) {
    auto loaded = velocity::load_profile(
      core::read_text_file(profile_path), config.num_steps, config.dt, config.v_max);
    for (const auto & w : loaded.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    return std::make_unique<planner::FixedProfileProvider>(std::move(loaded.profile));
  }
  if (g.speed == "constant") {
    return std::make_unique<planner::ConstantSpeedProvider>();
  }
  return std::make_unique<planner::GapKeepingProvider>();
}

int print_outcome_status(const planner::PlanOutcome & out)
{
  std::cerr << "status: " << planner::to_string(out.status);
  if (!out.message.empty()) {
    std::cerr << " (" << out.message << ")";
  }
  std::cerr << "\n";
  return out.status == planner::PlanStatus::kSolved ? kExitOk : kExitPlanningFailure;
}

int cmd_plan(
  const GlobalOptions & g, const std::string & scenario_path, double t, const std::string & mode,
  const std::string & profile_path)
{
  auto config = load_planner_config(g);
  apply_mode(mode, config);
  const auto scenario = core::load_scenario(core::read_text_file(scenario_path), config);
  const auto options = run_options(g);
  const auto snap = snapshot_at(scenario, config, options, t);
  const auto provider = make_provider(g, profile_path, config);
  const auto out = planner::plan_cycle(snap.input, config, *provider);
  if (out.solution) {
    std::cout << planner::format_solution(*out.solution, out.positions, out.corridor);
  }
  std::cerr << "nodes: " << out.nodes << "  optimization_ms: " << out.timings.optimization_ms
            << "\n";
  return print_outcome_status(out);
}

int cmd_corridor_debug(const GlobalOptions & g, const std::string & scenario_path, double t)
{
  const auto config = load_planner_config(g);
  const auto scenario = core::load_scenario(core::read_text_file(scenario_path), config);
  const auto options = run_options(g);
  const auto snap = snapshot_at(scenario, config, options, t);
  const auto provider = make_provider(g, "", config);
  corridor::CorridorTrace trace;
  const auto out = planner::plan_cycle(snap.input, config, *provider, &trace);
  std::cout << corridor::format_trace(trace);
  return print_outcome_status(out);
}

int cmd_simulate(
  const GlobalOptions & g, const std::string & scenario_path, const std::string & emit_dir)
{
  const auto config = load_planner_config(g);
  const auto scenario = core::load_scenario(core::read_text_file(scenario_path), config);
  auto report = harness::run_scenario(scenario, config, run_options(g));
  report.id = scenario_path;
  std::cout << harness::format_scenario_json(report) << "\n";
  if (!emit_dir.empty()) {
    harness::emit_report(report, harness::ReportFormat::kDelimitedTable, emit_dir);
    harness::emit_report(report, harness::ReportFormat::kStructuredText, emit_dir);
  }
  return report.scenario_success ? kExitOk : kExitPlanningFailure;
}

int cmd_batch(
  const GlobalOptions & g, const std::string & archetype_name, int count, std::uint64_t seed,
  int workers, const std::string & emit_dir)
{
  if (count <= 0 || workers <= 0) {
    throw core::InputError("--count and --workers must be positive");
  }
  const auto config = load_planner_config(g);
  const auto archetype = core::parse_archetype(archetype_name);
  std::vector<harness::NamedScenario> scenarios;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    scenarios.push_back(
      {archetype_name + "-" + std::to_string(s), core::generate_scenario(archetype, s)});
  }
  const auto report = harness::run_batch(scenarios, config, workers, run_options(g));
  std::cout << harness::format_batch_csv(report);
  std::cerr << "scenario_success_rate: " << report.scenario_success_rate
            << "  cycle_success_rate: " << report.cycle_success_rate
            << "  mean_cycle_ms: " << report.cycle_ms.mean << "\n";
  if (!emit_dir.empty()) {
    harness::emit_report(report, harness::ReportFormat::kDelimitedTable, emit_dir);
    harness::emit_report(report, harness::ReportFormat::kStructuredText, emit_dir);
  }
  return report.scenario_success_rate == 1.0 ? kExitOk : kExitPlanningFailure;
}

int cmd_gen(const std::string & archetype_name, std::uint64_t seed, const std::string & out_path)
{
  const auto scenario = core::generate_scenario(core::parse_archetype(archetype_name), seed);
  const auto text = core::serialize_scenario(scenario);
  if (out_path == "-") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write " + out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Highway trajectory planner"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "planner parameter overrides");
  app.add_option("--predictor", g.predictor, "SV prediction: replay | constant-velocity")
    ->capture_default_str();
  app.add_option("--speed", g.speed, "speed profile: gap | constant")->capture_default_str();

  std::string scenario_path;
  std::string profile_path;
  std::string emit_dir;
  std::string mode{"bnb"};
  std::string archetype;
  std::string out_path;
  double t = 0.0;
  int count = 1;
  int workers = 1;
  std::uint64_t seed = 0;

  auto * plan = app.add_subcommand("plan", "plan one cycle at time T and print the solution");
  plan->add_option("--scenario", scenario_path)->required();
  plan->add_option("--t", t, "cycle start time, s")->required();
  plan->add_option("--mode", mode, "bnb | convex")->capture_default_str();
  plan->add_option("--profile", profile_path, "velocity profile exchange file");

  auto * simulate = app.add_subcommand("simulate", "closed-loop run of one scenario");
  simulate->add_option("--scenario", scenario_path)->required();
  simulate->add_option("--emit", emit_dir, "write trajectory.csv and scenario.json here");

  auto * batch = app.add_subcommand("batch", "closed-loop runs of generated scenarios");
  batch->add_option("--archetype", archetype)->required();
  batch->add_option("--count", count)->required();
  batch->add_option("--seed", seed)->required();
  batch->add_option("--workers", workers)->capture_default_str();
  batch->add_option("--emit", emit_dir, "write batch.csv and batch.json here");

  auto * debug = app.add_subcommand("corridor-debug", "print the corridor search at time T");
  debug->add_option("--scenario", scenario_path)->required();
  debug->add_option("--t", t)->required();

  auto * gen = app.add_subcommand("gen", "write a generated scenario");
  gen->add_option("--archetype", archetype)->required();
  gen->add_option("--seed", seed)->required();
  gen->add_option("--out", out_path, "output file, - for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*plan) {
      return cmd_plan(g, scenario_path, t, mode, profile_path);
    }
    if (*simulate) {
      return cmd_simulate(g, scenario_path, emit_dir);
    }
    if (*batch) {
      return cmd_batch(g, archetype, count, seed, workers, emit_dir);
    }
    if (*debug) {
      return cmd_corridor_debug(g, scenario_path, t);
    }
    if (*gen) {
      return cmd_gen(archetype, seed, out_path);
    }
  } catch (const core::InputError & e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
