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

#include "hwplan/planner/plan_cycle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>

namespace hwplan::planner
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

velocity::VelocityProfile ConstantSpeedProvider::profile(
  const CycleInput & input, const core::PlannerConfig & config) const
{
  const double v = std::clamp(input.ev.v, config.min_step_ds / config.dt, config.v_max);
  return velocity::constant_profile(v, config.num_steps, config.dt, config.v_max);
}

velocity::VelocityProfile GapKeepingProvider::profile(
  const CycleInput & input, const core::PlannerConfig & config) const
{
  return velocity::gap_keeping_profile(
    input.ev, find_lead(input.ev, input.predictions, config), config.num_steps, config.dt,
    config);
}

velocity::VelocityProfile FixedProfileProvider::profile(
  const CycleInput &, const core::PlannerConfig & config) const
{
  profile_.validate(config.v_max, config.num_steps);
  return profile_;
}

std::optional<velocity::LeadVehicle> find_lead(
  const core::VehicleState & ev, const std::vector<core::SvPrediction> & predictions,
  const core::PlannerConfig & config)
{
  std::optional<velocity::LeadVehicle> lead;
  for (const auto & sv : predictions) {
    if (sv.poses.empty()) {
      continue;
    }
    const core::SvPose & pose = sv.pose_at(0);
    const double band = 0.5 * (ev.dims.width + sv.dims.width) + config.l_buf;
    if (pose.s <= ev.s || std::abs(pose.l - ev.l) >= band) {
      continue;
    }
    if (!lead || pose.s < lead->s) {
      lead = velocity::LeadVehicle{pose.s, pose.v, sv.dims.length};
    }
  }
  return lead;
}

std::string to_string(PlanStatus status)
{
  switch (status) {
    case PlanStatus::kSolved:
      return "Solved";
    case PlanStatus::kCorridorEmpty:
      return "CorridorEmpty";
    case PlanStatus::kInfeasible:
      return "Infeasible";
    case PlanStatus::kSolverFailure:
      return "SolverFailure";
  }
  return "Unknown";
}

PlanOutcome plan_cycle(
  const CycleInput & input, const core::PlannerConfig & config, const ProfileProvider & provider,
  corridor::CorridorTrace * trace)
{
  PlanOutcome out;
  const auto start = Clock::now();
  auto finish = [&](PlanStatus status, std::string message) {
    out.status = status;
    out.message = std::move(message);
    out.timings.total_ms = ms_since(start);
    return out;
  };
  if (input.road == nullptr) {
    return finish(PlanStatus::kSolverFailure, "input: no road model");
  }

  try {
    auto t = Clock::now();
    out.profile = provider.profile(input, config);
    out.positions = velocity::positions_from_profile(out.profile);
    out.timings.profile_ms = ms_since(t);

    t = Clock::now();
    out.corridor = corridor::build_corridor(
      *input.road, input.ev, input.predictions, out.positions, out.profile, config, trace);
    out.timings.corridor_ms = ms_since(t);
    if (out.corridor.empty()) {
      return finish(PlanStatus::kCorridorEmpty, "no feasible cell at the first step");
    }

    t = Clock::now();
    out.l_ref = reference_lateral(
      out.corridor, *input.road, input.ev.dims, config,
      input.previous_reference.value_or(input.ev.l));
    out.init.l0 = input.ev.l;
    out.init.l1 = std::clamp(std::tan(input.ev.heading), config.l1_min, config.l1_max);
    out.init.l2 = std::clamp(input.l2, config.l2_min, config.l2_max);

    PathInputs in;
    in.corridor = out.corridor;
    in.positions = out.positions;
    in.init = out.init;
    in.geometry = geometry::GeometryModel::make(
      input.ev.dims.width, input.ev.dims.length, config.num_segments, config.phi_max);
    in.l_ref = out.l_ref;
    in.road_lb = input.road->l_road_lb;
    in.road_ub = input.road->l_road_ub;
    SolveResult solved = solve_path(in, config);
    out.timings.optimization_ms = ms_since(t);
    out.nodes = solved.nodes;

    switch (solved.status) {
      case SolveStatus::kSolved:
        break;
      case SolveStatus::kInfeasible:
        return finish(PlanStatus::kInfeasible, solved.message);
      case SolveStatus::kSolverFailure:
        return finish(PlanStatus::kSolverFailure, solved.message);
    }
    out.trajectory = extract_trajectory(
      *solved.solution, out.positions, out.profile, input.ev.s, input.t0);
    out.solution = std::move(solved.solution);
    return finish(PlanStatus::kSolved, "");
  } catch (const std::exception & e) {
    out.solution.reset();
    out.trajectory.reset();
    return finish(PlanStatus::kSolverFailure, std::string("input: ") + e.what());
  }
}

}  // namespace hwplan::planner
