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

#ifndef HWPLAN_TESTS__ORACLES__PATH_INSTANCES_HPP_
#define HWPLAN_TESTS__ORACLES__PATH_INSTANCES_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hwplan/planner/path_problem.hpp"

namespace hwplan::oracle
{

/// Random path-optimization instance. With feasible = true the corridor is grown around a
/// kinematically consistent lateral path whose linearized footprint fits with random slack, so
/// at least one sign pattern is feasible. Otherwise the slack may be negative at random steps,
/// which makes some instances infeasible.
inline planner::PathInputs random_path_instance(
  std::mt19937_64 & rng, int K, const core::PlannerConfig & config, bool feasible)
{
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };

  planner::PathInputs in;
  in.geometry = geometry::GeometryModel::make(1.8, 4.8, config.num_segments, config.phi_max);
  in.road_lb = -5.625;
  in.road_ub = 5.625;
  in.init = {uni(-1.5, 1.5), uni(-0.05, 0.05), uni(-0.005, 0.005)};

  const double v = uni(20.0, 35.0);
  std::vector<double> ds(K);
  double s = 0.0;
  for (int i = 0; i < K; ++i) {
    ds[i] = v * config.dt * uni(0.9, 1.1);
    s += ds[i];
    in.positions.push_back(s);
  }

  // Jerk from a triple-pole tracker of random lateral targets: lane-change-like shapes that
  // swing both ways and stay on the road for any horizon.
  const double w = 1.0 / uni(12.0, 40.0);
  double target = uni(-3.75, 3.75);
  std::vector<double> l3(K);
  std::vector<planner::KinematicState> path;
  planner::KinematicState st{in.init.l0, in.init.l1, in.init.l2};
  for (int i = 0; i < K; ++i) {
    if (u01(rng) < 0.08) {
      target = uni(-3.75, 3.75);
    }
    const double jerk = w * w * w * (target - st.l) - 3.0 * w * w * st.l1 - 3.0 * w * st.l2;
    l3[i] = std::clamp(jerk, 0.5 * config.l3_min, 0.5 * config.l3_max);
    const auto next = planner::propagate_kinematics(
      {st.l, st.l1, st.l2}, {l3[i]}, {ds[i]});
    st = next.front();
    path.push_back(st);
  }

  const std::vector<double> offsets = geometry::segment_offsets(config.num_segments);
  in.corridor.K = K;
  for (int i = 0; i < K; ++i) {
    const double cell_len = std::max(config.w_cell * ds[i] / config.dt, 4.8 + 0.4);
    const double eps = in.geometry.a * std::abs(path[i].l1) + in.geometry.b;
    double hi = -1e9;
    double lo = 1e9;
    for (double c : offsets) {
      const double centre = path[i].l + c * (cell_len / config.num_segments) * path[i].l1;
      hi = std::max(hi, centre + eps);
      lo = std::min(lo, centre - eps);
    }
    double slack_hi = uni(0.0, 1.2);
    double slack_lo = uni(0.0, 1.2);
    if (!feasible && u01(rng) < 0.15) {
      slack_hi = uni(-0.6, 0.0);
    }
    if (!feasible && u01(rng) < 0.15) {
      slack_lo = uni(-0.6, 0.0);
    }
    corridor::Cell cell;
    cell.step_index = i + 1;
    cell.s_center = in.positions[i];
    cell.cell_len = cell_len;
    cell.l_ub = hi + config.l_mar + slack_hi;
    cell.l_lb = lo - config.l_mar - slack_lo;
    in.corridor.cells.push_back(cell);
    in.corridor.ub.push_back(cell.l_ub);
    in.corridor.lb.push_back(cell.l_lb);
    // References pull toward a lane centre off the path so the corridor actually binds.
    in.l_ref.push_back(u01(rng) < 0.5 ? path[i].l + uni(-3.0, 3.0) : 0.5 * (cell.l_lb + cell.l_ub));
  }
  return in;
}

}  // namespace hwplan::oracle

#endif  // HWPLAN_TESTS__ORACLES__PATH_INSTANCES_HPP_
