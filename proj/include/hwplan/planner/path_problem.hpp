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

#ifndef HWPLAN__PLANNER__PATH_PROBLEM_HPP_
#define HWPLAN__PLANNER__PATH_PROBLEM_HPP_

#include <optional>
#include <vector>

#include "hwplan/core/types.hpp"
#include "hwplan/corridor/corridor.hpp"
#include "hwplan/geometry/vehicle_geometry.hpp"
#include "hwplan/qp/qp_problem.hpp"

namespace hwplan::planner
{

/// (l, l', l'') at s = 0, i.e. the start of the planning horizon.
struct InitialLateralState
{
  double l0{0.0};
  double l1{0.0};
  double l2{0.0};
};

/// Everything the path optimization needs besides the configuration.
struct PathInputs
{
  corridor::Corridor corridor;
  std::vector<double> positions;  // s_i relative to the ego, at least corridor.K entries
  InitialLateralState init;
  geometry::GeometryModel geometry;
  std::vector<double> l_ref;  // corridor.K entries
  double road_lb{-5.625};
  double road_ub{5.625};
};

/// How the footprint half width eps = a |l'| + b enters the constraints at one step.
enum class StepMode : signed char {
  kRelaxed,   // eps = b, a valid relaxation of every sign choice
  kPositive,  // k = +1: eps = a l' + b together with l' >= 0
  kNegative,  // k = -1: eps = -a l' + b together with l' <= 0
  kBothPieces,  // both sign variants, no sign row: exact and convex
};

/// Column of variable d (0: l, 1: l', 2: l'', 3: l''') at step i (0-based).
constexpr int var_index(int step, int derivative) { return 4 * step + derivative; }

struct AssembledProblem
{
  qp::QpProblem qp;
  int K{0};
  std::vector<double> ds;       // step lengths, ds[0] = positions[0]
  double objective_offset{0.0};  // w1 sum l_ref^2, dropped from the QP
  int rows_per_step{0};          // footprint rows per step, sign row excluded
  int footprint_rows{0};         // total footprint rows (before the K sign rows)
};

/// General assembly with one mode per step. Footprint rows come first, step by step (upper rows
/// j = 1..lambda, then lower rows, repeated per piece); one sign row per step follows, with an
/// infinite right-hand side where no sign is fixed. Throws core::InputError for inconsistent
/// inputs or steps shorter than config.min_step_ds.
AssembledProblem assemble_problem(
  const PathInputs & in, const core::PlannerConfig & config, const std::vector<StepMode> & modes);

/// Fixed signs (k_i in {-1, +1}) or, when absent, the both-piece convex form.
AssembledProblem assemble_problem(
  const PathInputs & in, const core::PlannerConfig & config,
  const std::optional<std::vector<int>> & sign_pattern);

struct KinematicState
{
  double l{0.0};
  double l1{0.0};
  double l2{0.0};
};

/// Forward evaluation of the third-order update, one state per jerk entry.
std::vector<KinematicState> propagate_kinematics(
  const InitialLateralState & init, const std::vector<double> & l3, const std::vector<double> & ds);

/// Lane-centering references: at each step, the lane centre nearest the previous reference among
/// lanes the ego body fits in with margin; the cell midpoint when none fits. \p previous seeds
/// the first step.
std::vector<double> reference_lateral(
  const corridor::Corridor & corridor, const core::RoadModel & road,
  const core::VehicleDims & dims, const core::PlannerConfig & config, double previous);

}  // namespace hwplan::planner

#endif  // HWPLAN__PLANNER__PATH_PROBLEM_HPP_
