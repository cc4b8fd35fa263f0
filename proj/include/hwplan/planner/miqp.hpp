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

#ifndef HWPLAN__PLANNER__MIQP_HPP_
#define HWPLAN__PLANNER__MIQP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hwplan/planner/path_problem.hpp"
#include "hwplan/velocity/profile.hpp"

namespace hwplan::planner
{

struct PathSolution
{
  int K{0};
  std::vector<double> l;
  std::vector<double> l1;
  std::vector<double> l2;
  std::vector<double> l3;
  std::vector<int> k;
  double objective{0.0};
  core::SolveMode mode{core::SolveMode::kBranchAndBound};
};

enum class SolveStatus { kSolved, kInfeasible, kSolverFailure };

struct SolveResult
{
  SolveStatus status{SolveStatus::kSolverFailure};
  std::optional<PathSolution> solution;
  int nodes{0};          // QP relaxations solved
  int qp_iterations{0};
  std::string message;
};

/// Best-first branch-and-bound over the step signs. The root relaxes every sign (eps = b); a
/// node whose relaxed steps already satisfy the true footprint a |l'| + b is sign-consistent
/// and becomes an incumbent, otherwise the violating step with the largest |l'| is fixed both
/// ways. Children inherit the parent bound and are warm-started from its solution.
SolveResult solve_branch_and_bound(const PathInputs & in, const core::PlannerConfig & config);

/// Single QP with both sign variants of every footprint row; k = sign(l') afterwards.
SolveResult solve_convex_equivalent(const PathInputs & in, const core::PlannerConfig & config);

/// Solve of one fixed sign pattern, used for exhaustive cross-checks.
SolveResult solve_fixed_pattern(
  const PathInputs & in, const core::PlannerConfig & config, const std::vector<int> & k);

SolveResult solve_path(const PathInputs & in, const core::PlannerConfig & config);

struct Trajectory
{
  std::vector<core::TrajectoryPoint> points;
  std::vector<double> headings;    // rad, atan(l')
  std::vector<double> velocities;  // m/s
};

/// Absolute trajectory: s = ev_abs_s + s_i, t = t0 + i dt for i = 1..K.
Trajectory extract_trajectory(
  const PathSolution & sol, const std::vector<double> & positions,
  const velocity::VelocityProfile & profile, double ev_abs_s, double t0);

/// Tab-separated per-step table: i, s, l, l', l'', l''', k, lb, ub.
std::string format_solution(
  const PathSolution & sol, const std::vector<double> & positions,
  const corridor::Corridor & corridor);

}  // namespace hwplan::planner

#endif  // HWPLAN__PLANNER__MIQP_HPP_
