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

#include "hwplan/harness/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hwplan/core/frenet.hpp"
#include "hwplan/geometry/obb.hpp"

namespace hwplan::harness
{

namespace
{

constexpr double kGridTol = 1e-6;

/// n such that value = n * unit, or InputError.
long grid_index(double value, double unit, const char * what)
{
  const double ratio = value / unit;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > kGridTol) {
    throw core::InputError(
      std::string(what) + " " + std::to_string(value) + " is not a multiple of " +
      std::to_string(unit));
  }
  return static_cast<long>(n);
}

/// Tangent direction of the reference line at arc length s.
double road_heading(
  const core::RoadModel & road, const std::vector<double> & arc, double s)
{
  const auto & pts = road.reference_line;
  std::size_t seg = 0;
  while (seg + 2 < pts.size() && arc[seg + 1] < s) {
    ++seg;
  }
  return std::atan2(pts[seg + 1].y - pts[seg].y, pts[seg + 1].x - pts[seg].x);
}

geometry::Obb frenet_box(
  const core::RoadModel & road, const std::vector<double> & arc, double s, double l,
  double heading, const core::VehicleDims & dims)
{
  geometry::Obb box;
  box.center = core::frenet_to_cartesian(road, {s, l, 0.0});
  box.heading = road_heading(road, arc, s) + heading;
  box.half_length = 0.5 * dims.length;
  box.half_width = 0.5 * dims.width;
  return box;
}

struct ActivePlan
{
  double t_start{0.0};
  planner::PathSolution solution;
  planner::Trajectory trajectory;
  std::vector<double> l_ref;
};

}  // namespace

std::vector<core::SvPrediction> SvPredictor::predict(
  const core::Scenario & scenario, double t, int num_steps, double dt) const
{
  const long k0 = grid_index(t, scenario.dt_sample, "prediction time");
  const long stride = grid_index(dt, scenario.dt_sample, "planning step");
  std::vector<core::SvPrediction> out;
  out.reserve(scenario.sv_tracks.size());
  for (const auto & track : scenario.sv_tracks) {
    core::SvPrediction pred;
    pred.id = track.id;
    pred.dims = track.dims;
    pred.poses.reserve(static_cast<std::size_t>(num_steps) + 1);
    const core::SvPose & now = track.pose_at(static_cast<std::size_t>(k0));
    for (int i = 0; i <= num_steps; ++i) {
      if (mode == PredictorMode::kGroundTruthReplay) {
        pred.poses.push_back(track.pose_at(static_cast<std::size_t>(k0 + i * stride)));
      } else {
        const double tau = i * dt;
        pred.poses.push_back(
          {now.s + now.v * std::cos(now.heading) * tau,
           now.l + now.v * std::sin(now.heading) * tau, now.heading, now.v});
      }
    }
    out.push_back(std::move(pred));
  }
  return out;
}

int ScenarioReport::successful_cycles() const
{
  return static_cast<int>(
    std::count_if(cycles.begin(), cycles.end(), [](const auto & c) { return c.success; }));
}

ScenarioReport run_scenario(
  const core::Scenario & scenario, const core::PlannerConfig & config, const RunOptions & options)
{
  const long per_cycle = grid_index(config.dt_replan, config.dt, "dt_replan");
  grid_index(config.dt, scenario.dt_sample, "planning step");
  if (per_cycle < 1) {
    throw core::InputError("dt_replan must be at least one planning step");
  }
  const planner::GapKeepingProvider gap_keeping;
  const planner::ConstantSpeedProvider constant_speed;
  const planner::ProfileProvider & provider =
    options.provider != nullptr
      ? *options.provider
      : (options.profile == ProfileMode::kGapKeeping
           ? static_cast<const planner::ProfileProvider &>(gap_keeping)
           : constant_speed);

  ScenarioReport report;
  core::VehicleState ev = scenario.ev_initial;
  double l2 = 0.0;
  report.executed.push_back(
    {0.0, ev.s, ev.l, ev.heading, ev.v, std::tan(ev.heading), 0.0});

  std::optional<ActivePlan> plan;
  const long num_cycles =
    static_cast<long>(std::floor(scenario.duration / config.dt_replan + kGridTol));
  for (long c = 0; c < num_cycles; ++c) {
    const double t = static_cast<double>(c * per_cycle) * config.dt;

    planner::CycleInput input;
    input.road = &scenario.road;
    input.ev = ev;
    input.predictions = options.predictor.predict(scenario, t, config.num_steps, config.dt);
    input.t0 = t;
    input.l2 = l2;
    if (plan) {
      // Reference the previous plan had chosen for the current instant.
      const long idx = std::lround((t - plan->t_start) / config.dt) - 1;
      input.previous_reference =
        plan->l_ref[static_cast<std::size_t>(std::clamp<long>(idx, 0, plan->solution.K - 1))];
    }
    planner::PlanOutcome outcome = planner::plan_cycle(input, config, provider);
    if (options.observer) {
      options.observer(input, outcome);
    }

    CycleSummary summary;
    summary.t = t;
    summary.status = outcome.status;
    summary.K = outcome.solution ? outcome.solution->K : 0;
    summary.nodes = outcome.nodes;
    summary.success =
      outcome.status == planner::PlanStatus::kSolved && summary.K >= config.k_min_steps;
    summary.timings = outcome.timings;
    summary.message = outcome.message;
    report.cycles.push_back(summary);
    if (outcome.status == planner::PlanStatus::kSolved) {
      plan = ActivePlan{t, *outcome.solution, *outcome.trajectory, outcome.l_ref};
    } else if (report.failure.empty()) {
      report.failure = "cycle at t=" + std::to_string(t) + ": " +
        planner::to_string(outcome.status) +
        (outcome.message.empty() ? "" : " (" + outcome.message + ")");
    }

    for (long j = 1; j <= per_cycle; ++j) {
      const double tj = static_cast<double>(c * per_cycle + j) * config.dt;
      const long idx = plan ? std::lround((tj - plan->t_start) / config.dt) - 1 : -1;
      if (!plan || idx >= plan->solution.K) {
        report.plan_exhausted = true;
        break;
      }
      const auto i = static_cast<std::size_t>(idx);
      const double v = plan->trajectory.velocities[i];
      ev.a = (v - ev.v) / config.dt;
      ev.s = plan->trajectory.points[i].s;
      ev.l = plan->trajectory.points[i].l;
      ev.heading = plan->trajectory.headings[i];
      ev.v = v;
      l2 = plan->solution.l2[i];
      report.executed.push_back({tj, ev.s, ev.l, ev.heading, v, plan->solution.l1[i], l2});
    }
    if (report.plan_exhausted) {
      report.failure += report.failure.empty() ? "" : "; ";
      report.failure += "no planned motion left at t=" + std::to_string(t);
      break;
    }
  }

  for (const auto & p : report.executed) {
    const double curvature = p.l2 / std::pow(1.0 + p.l1 * p.l1, 1.5);
    report.peak_lateral_accel = std::max(report.peak_lateral_accel, std::abs(p.v * p.v * curvature));
    report.peak_heading = std::max(report.peak_heading, std::abs(p.heading));
  }
  report.violations =
    verify_collision_free(report.executed, scenario, scenario.ev_initial.dims).violations;
  if (!report.violations.empty() && report.failure.empty()) {
    report.failure = "collision with " + report.violations.front().sv_id + " at t=" +
      std::to_string(report.violations.front().t);
  }
  report.scenario_success = !report.plan_exhausted && report.violations.empty() &&
    report.successful_cycles() == static_cast<int>(report.cycles.size());
  return report;
}

VerificationReport verify_collision_free(
  const std::vector<ExecutedPoint> & executed, const core::Scenario & scenario,
  const core::VehicleDims & dims)
{
  VerificationReport out;
  const std::vector<double> arc = core::cumulative_arc_length(scenario.road.reference_line);
  for (const auto & p : executed) {
    const long k = grid_index(p.t, scenario.dt_sample, "trajectory timestamp");
    if (k < 0) {
      throw core::InputError("negative trajectory timestamp");
    }
    const geometry::Obb ego = frenet_box(scenario.road, arc, p.s, p.l, p.heading, dims);
    for (const auto & track : scenario.sv_tracks) {
      const core::SvPose & pose = track.pose_at(static_cast<std::size_t>(k));
      const geometry::Obb sv =
        frenet_box(scenario.road, arc, pose.s, pose.l, pose.heading, track.dims);
      if (geometry::obb_intersect(ego, sv)) {
        out.violations.push_back({p.t, track.id});
      }
    }
  }
  return out;
}

}  // namespace hwplan::harness
