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

#ifndef HWPLAN__HARNESS__SIMULATION_HPP_
#define HWPLAN__HARNESS__SIMULATION_HPP_

#include <functional>
#include <string>
#include <vector>

#include "hwplan/core/types.hpp"
#include "hwplan/planner/plan_cycle.hpp"

namespace hwplan::harness
{

enum class PredictorMode { kGroundTruthReplay, kConstantVelocity };

/// Source of SV predictions over a planning horizon.
struct SvPredictor
{
  PredictorMode mode{PredictorMode::kGroundTruthReplay};

  /// poses[i] at t + i dt for i = 0..num_steps. ConstantVelocity holds v and heading of the
  /// pose observed at t. Throws InputError when t or dt is off the track sampling grid.
  std::vector<core::SvPrediction> predict(
    const core::Scenario & scenario, double t, int num_steps, double dt) const;
};

enum class ProfileMode { kGapKeeping, kConstantSpeed };

/// One executed sample of the ego vehicle. heading is relative to the road tangent.
struct ExecutedPoint
{
  double t{0.0};
  double s{0.0};
  double l{0.0};
  double heading{0.0};
  double v{0.0};
  double l1{0.0};
  double l2{0.0};
};

struct CycleSummary
{
  double t{0.0};
  planner::PlanStatus status{planner::PlanStatus::kSolverFailure};
  int K{0};
  int nodes{0};
  bool success{false};
  planner::StageTimings timings;
  std::string message;
};

struct Violation
{
  double t{0.0};
  std::string sv_id;
};

struct VerificationReport
{
  std::vector<Violation> violations;

  bool collision_free() const { return violations.empty(); }
};

struct ScenarioReport
{
  std::string id;
  std::vector<CycleSummary> cycles;
  std::vector<ExecutedPoint> executed;
  std::vector<Violation> violations;
  bool scenario_success{false};
  bool plan_exhausted{false};  // a failed cycle found no previous plan left to execute
  double peak_lateral_accel{0.0};  // m/s^2
  double peak_heading{0.0};        // rad
  std::string failure;

  int successful_cycles() const;
};

/// Called once per cycle with the planner input and outcome. Under run_batch it is invoked from
/// several threads at once.
using CycleObserver =
  std::function<void(const planner::CycleInput &, const planner::PlanOutcome &)>;

struct RunOptions
{
  SvPredictor predictor{};
  ProfileMode profile{ProfileMode::kGapKeeping};
  const planner::ProfileProvider * provider{nullptr};  // used instead of profile when set
  CycleObserver observer;
};

/// Receding-horizon closed loop: every dt_replan the planner runs on the current ego state and
/// the first dt_replan of the plan is executed. A failed cycle keeps executing the previous
/// plan; the run stops when no planned step is left. Throws InputError when dt_replan is not a
/// multiple of dt or dt is off the track sampling grid.
ScenarioReport run_scenario(
  const core::Scenario & scenario, const core::PlannerConfig & config,
  const RunOptions & options = {});

/// Exact check of the executed ego rectangle against every SV rectangle at each executed
/// sample. Throws InputError when a timestamp does not fall on the track sampling grid.
VerificationReport verify_collision_free(
  const std::vector<ExecutedPoint> & executed, const core::Scenario & scenario,
  const core::VehicleDims & dims);

}  // namespace hwplan::harness

#endif  // HWPLAN__HARNESS__SIMULATION_HPP_
