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

#ifndef HWPLAN__CORRIDOR__CORRIDOR_HPP_
#define HWPLAN__CORRIDOR__CORRIDOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hwplan/core/types.hpp"
#include "hwplan/velocity/profile.hpp"

namespace hwplan::corridor
{

struct Interval
{
  double lo{0.0};
  double hi{0.0};
};

/// Obstacle-free rectangle at one planning step: longitudinal window centred on s_center with
/// length cell_len, lateral span [l_lb, l_ub].
struct Cell
{
  int step_index{0};
  double s_center{0.0};
  double cell_len{0.0};
  double l_lb{0.0};
  double l_ub{0.0};

  double width() const { return l_ub - l_lb; }
  double center() const { return 0.5 * (l_lb + l_ub); }
  Interval lateral() const { return {l_lb, l_ub}; }
};

/// Selected cell chain. K == 0 signals an empty corridor (no feasible cell at the first step).
struct Corridor
{
  int K{0};
  std::vector<Cell> cells;
  std::vector<double> lb;
  std::vector<double> ub;

  bool empty() const { return K == 0; }
};

/// Inflated occupancy of a surrounding vehicle in the Frenet frame.
struct SvExtent
{
  std::string id;
  double s_lo{0.0};
  double s_hi{0.0};
  double l_lo{0.0};
  double l_hi{0.0};
};

struct StepTrace
{
  int step_index{0};
  std::vector<Cell> candidates;
  std::vector<Cell> feasible;
  std::optional<Cell> selected;
};

/// Per-step record of the search, for debugging dumps.
struct CorridorTrace
{
  std::vector<StepTrace> steps;
};

/// max(w_cell * v, L + 0.4): the raw velocity-proportional length, floored so the cell always
/// encloses the vehicle body.
double cell_length(double v, const core::PlannerConfig & config, const core::VehicleDims & dims);

/// Axis-aligned Frenet extent of the rotated SV rectangle, grown by l_mar on both axes.
SvExtent inflate(const core::SvPose & pose, const core::VehicleDims & dims, const std::string & id,
  const core::PlannerConfig & config);

/// Lateral scan over [l_road_lb, l_road_ub]: every obstacle whose longitudinal extent overlaps
/// the cell window removes its lateral extent; each maximal free interval becomes a cell.
std::vector<Cell> scan_free_segments(
  int step_index, double s_center, double cell_len, const core::RoadModel & road,
  const std::vector<SvExtent> & obstacles);

/// Keeps cells at least W_EV + 2 l_buf wide.
std::vector<Cell> filter_feasible(
  const std::vector<Cell> & candidates, const core::PlannerConfig & config,
  const core::VehicleDims & dims);

/// |a n b| / |a u b|. Throws std::invalid_argument on degenerate intervals.
double interval_iou(const Interval & a, const Interval & b);

/// Best continuation of \p prev. Without a previous cell, the cell containing ev_l wins, else
/// the one whose centre is nearest ev_l. Ties fall back to the nearest centre, then the lowest
/// index. Throws std::invalid_argument for an empty list.
Cell select_optimal(
  const std::vector<Cell> & feasible, const std::optional<Cell> & prev, double ev_l);

/// Greedy corridor search over positions (relative to ev.s, strictly increasing, length N).
/// Stops at the first step without a feasible cell; K is the number of steps before it.
Corridor build_corridor(
  const core::RoadModel & road, const core::VehicleState & ev,
  const std::vector<core::SvPrediction> & predictions, const std::vector<double> & positions,
  const velocity::VelocityProfile & profile, const core::PlannerConfig & config,
  CorridorTrace * trace = nullptr);

/// Text table of a trace: one row per candidate, marking feasibility and selection.
std::string format_trace(const CorridorTrace & trace);

}  // namespace hwplan::corridor

#endif  // HWPLAN__CORRIDOR__CORRIDOR_HPP_
