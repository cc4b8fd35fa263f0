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

#include "hwplan/corridor/corridor.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hwplan/geometry/vehicle_geometry.hpp"

namespace hwplan::corridor
{

namespace
{

constexpr double kCellLengthFloorPad = 0.4;  // m beyond the body length
constexpr double kTieTolerance = 1e-12;

}  // namespace

double cell_length(double v, const core::PlannerConfig & config, const core::VehicleDims & dims)
{
  return std::max(config.w_cell * v, dims.length + kCellLengthFloorPad);
}

SvExtent inflate(
  const core::SvPose & pose, const core::VehicleDims & dims, const std::string & id,
  const core::PlannerConfig & config)
{
  const double c = std::abs(std::cos(pose.heading));
  const double s = std::abs(std::sin(pose.heading));
  const double half_lon = std::max(0.5 * dims.length, 0.5 * dims.length * c + 0.5 * dims.width * s);
  const double half_lat = std::max(
    geometry::exact_half_width(std::tan(pose.heading), dims.width),
    0.5 * dims.width * c + 0.5 * dims.length * s);
  return {
    id, pose.s - half_lon - config.l_mar, pose.s + half_lon + config.l_mar,
    pose.l - half_lat - config.l_mar, pose.l + half_lat + config.l_mar};
}

std::vector<Cell> scan_free_segments(
  int step_index, double s_center, double cell_len, const core::RoadModel & road,
  const std::vector<SvExtent> & obstacles)
{
  const double window_lo = s_center - 0.5 * cell_len;
  const double window_hi = s_center + 0.5 * cell_len;

  std::vector<Interval> blocked;
  for (const SvExtent & ob : obstacles) {
    if (ob.s_hi <= window_lo || ob.s_lo >= window_hi) {
      continue;
    }
    const double lo = std::max(ob.l_lo, road.l_road_lb);
    const double hi = std::min(ob.l_hi, road.l_road_ub);
    if (hi > lo) {
      blocked.push_back({lo, hi});
    }
  }
  std::sort(blocked.begin(), blocked.end(), [](const Interval & a, const Interval & b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });

  std::vector<Cell> cells;
  double cursor = road.l_road_lb;
  auto emit = [&](double lo, double hi) {
    if (hi > lo) {
      cells.push_back({step_index, s_center, cell_len, lo, hi});
    }
  };
  for (const Interval & b : blocked) {
    if (b.lo > cursor) {
      emit(cursor, b.lo);
    }
    cursor = std::max(cursor, b.hi);
  }
  emit(cursor, road.l_road_ub);
  return cells;
}

std::vector<Cell> filter_feasible(
  const std::vector<Cell> & candidates, const core::PlannerConfig & config,
  const core::VehicleDims & dims)
{
  const double min_width = dims.width + 2.0 * config.l_buf;
  std::vector<Cell> feasible;
  std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(feasible),
    [&](const Cell & c) { return c.width() >= min_width; });
  return feasible;
}

double interval_iou(const Interval & a, const Interval & b)
{
  if (!(a.lo < a.hi) || !(b.lo < b.hi)) {
    throw std::invalid_argument("interval_iou: degenerate interval");
  }
  const double inter = std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
  const double uni = (a.hi - a.lo) + (b.hi - b.lo) - inter;
  return inter / uni;
}

Cell select_optimal(
  const std::vector<Cell> & feasible, const std::optional<Cell> & prev, double ev_l)
{
  if (feasible.empty()) {
    throw std::invalid_argument("select_optimal: no feasible cell");
  }
  if (feasible.size() == 1) {
    return feasible.front();
  }

  if (!prev) {
    for (const Cell & c : feasible) {
      if (c.l_lb <= ev_l && ev_l <= c.l_ub) {
        return c;
      }
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < feasible.size(); ++k) {
      if (std::abs(feasible[k].center() - ev_l) < std::abs(feasible[best].center() - ev_l) - kTieTolerance) {
        best = k;
      }
    }
    return feasible[best];
  }

  const Interval ref = prev->lateral();
  const double ref_center = prev->center();
  std::size_t best = 0;
  double best_iou = interval_iou(feasible[0].lateral(), ref);
  double best_dist = std::abs(feasible[0].center() - ref_center);
  for (std::size_t k = 1; k < feasible.size(); ++k) {
    const double iou = interval_iou(feasible[k].lateral(), ref);
    const double dist = std::abs(feasible[k].center() - ref_center);
    const bool better_iou = iou > best_iou + kTieTolerance;
    const bool tied_iou = std::abs(iou - best_iou) <= kTieTolerance;
    if (better_iou || (tied_iou && dist < best_dist - kTieTolerance)) {
      best = k;
      best_iou = iou;
      best_dist = dist;
    }
  }
  return feasible[best];
}

Corridor build_corridor(
  const core::RoadModel & road, const core::VehicleState & ev,
  const std::vector<core::SvPrediction> & predictions, const std::vector<double> & positions,
  const velocity::VelocityProfile & profile, const core::PlannerConfig & config,
  CorridorTrace * trace)
{
  if (positions.size() != profile.v.size()) {
    throw std::invalid_argument("build_corridor: positions and profile lengths differ");
  }
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i] > positions[i - 1])) {
      throw std::invalid_argument("build_corridor: positions must be strictly increasing");
    }
  }

  Corridor corridor;
  std::optional<Cell> prev;
  std::vector<SvExtent> obstacles;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int step = static_cast<int>(i) + 1;
    obstacles.clear();
    for (const core::SvPrediction & sv : predictions) {
      obstacles.push_back(inflate(sv.pose_at(i + 1), sv.dims, sv.id, config));
    }
    const double len = cell_length(profile.v[i], config, ev.dims);
    const auto candidates = scan_free_segments(step, ev.s + positions[i], len, road, obstacles);
    const auto feasible = filter_feasible(candidates, config, ev.dims);

    StepTrace * record = nullptr;
    if (trace != nullptr) {
      trace->steps.push_back({step, candidates, feasible, std::nullopt});
      record = &trace->steps.back();
    }
    if (feasible.empty()) {
      break;
    }
    const Cell chosen = select_optimal(feasible, prev, ev.l);
    if (record != nullptr) {
      record->selected = chosen;
    }
    corridor.cells.push_back(chosen);
    corridor.lb.push_back(chosen.l_lb);
    corridor.ub.push_back(chosen.l_ub);
    prev = chosen;
  }
  corridor.K = static_cast<int>(corridor.cells.size());
  return corridor;
}

std::string format_trace(const CorridorTrace & trace)
{
  std::ostringstream out;
  out << "step\ts_center\tcell_len\tl_lb\tl_ub\twidth\tfeasible\tselected\n";
  out << std::fixed << std::setprecision(3);
  for (const StepTrace & step : trace.steps) {
    for (const Cell & c : step.candidates) {
      const bool feasible = std::any_of(step.feasible.begin(), step.feasible.end(),
        [&](const Cell & f) { return f.l_lb == c.l_lb && f.l_ub == c.l_ub; });
      const bool selected = step.selected && step.selected->l_lb == c.l_lb && step.selected->l_ub == c.l_ub;
      out << step.step_index << '\t' << c.s_center << '\t' << c.cell_len << '\t' << c.l_lb << '\t'
          << c.l_ub << '\t' << c.width() << '\t' << (feasible ? 1 : 0) << '\t' << (selected ? 1 : 0)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace hwplan::corridor
