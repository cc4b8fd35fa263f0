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

#include "hwplan/planner/miqp.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <queue>
#include <sstream>

#include "hwplan/qp/qp_solver.hpp"

namespace hwplan::planner
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double l1) { return l1 >= -1e-9 ? 1 : -1; }

PathSolution to_solution(
  const AssembledProblem & ap, const qp::QpResult & r, core::SolveMode mode)
{
  PathSolution s;
  s.K = ap.K;
  s.mode = mode;
  s.objective = r.objective + ap.objective_offset;
  for (int i = 0; i < ap.K; ++i) {
    s.l.push_back(r.x(var_index(i, 0)));
    s.l1.push_back(r.x(var_index(i, 1)));
    s.l2.push_back(r.x(var_index(i, 2)));
    s.l3.push_back(r.x(var_index(i, 3)));
    s.k.push_back(sign_of(s.l1.back()));
  }
  return s;
}

qp::QpSettings settings_for(
  const core::PlannerConfig & config, const qp::WarmStart * ws, qp::SolveCache * cache = nullptr)
{
  qp::QpSettings s;
  s.cache = cache;
  s.tol = config.qp_tol;
  s.max_iter = config.qp_max_iter;
  s.warm_start = ws;
  return s;
}

SolveResult single_solve(
  const PathInputs & in, const core::PlannerConfig & config, const std::vector<StepMode> & modes,
  core::SolveMode mode)
{
  SolveResult out;
  const AssembledProblem ap = assemble_problem(in, config, modes);
  const qp::QpResult r = qp::solve_qp(ap.qp, settings_for(config, nullptr));
  out.nodes = 1;
  out.qp_iterations = r.iterations;
  switch (r.status) {
    case qp::QpStatus::kOptimal:
      out.status = SolveStatus::kSolved;
      out.solution = to_solution(ap, r, mode);
      break;
    case qp::QpStatus::kInfeasible:
      out.status = SolveStatus::kInfeasible;
      out.message = "no feasible path in the corridor";
      break;
    default:
      out.status = SolveStatus::kSolverFailure;
      out.message = "qp: " + qp::to_string(r.status);
      break;
  }
  return out;
}

/// Largest violation of the true footprint (eps = a |l'| + b) at step i.
double footprint_violation(
  const PathInputs & in, const core::PlannerConfig & config, const std::vector<double> & offsets,
  int i, double l, double l1)
{
  const auto & geo = in.geometry;
  const double eps = geo.a * std::abs(l1) + geo.b;
  const double ds_seg = in.corridor.cells[i].cell_len / config.num_segments;
  const double ub = in.corridor.ub[i] - config.l_mar;
  const double lb = in.corridor.lb[i] + config.l_mar;
  double worst = 0.0;
  for (double c : offsets) {
    const double centre = l + c * ds_seg * l1;
    worst = std::max({worst, centre + eps - ub, lb - (centre - eps)});
  }
  return worst;
}

struct Node
{
  std::vector<StepMode> modes;
  double bound{-kInf};
  long order{0};
  std::shared_ptr<const qp::WarmStart> warm;
};

struct NodeOrder
{
  bool operator()(const Node & a, const Node & b) const
  {
    if (a.bound != b.bound) {
      return a.bound > b.bound;
    }
    return a.order > b.order;
  }
};

}  // namespace

SolveResult solve_branch_and_bound(const PathInputs & in, const core::PlannerConfig & config)
{
  SolveResult out;
  const int K = in.corridor.K;
  const std::vector<double> offsets = geometry::segment_offsets(config.num_segments);

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long order = 0;
  open.push(Node{std::vector<StepMode>(std::max(K, 0), StepMode::kRelaxed), -kInf, order++, {}});

  qp::SolveCache cache;
  double incumbent = kInf;
  auto prune_level = [&]() { return incumbent - 1e-10 * (1.0 + std::abs(incumbent)); };

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= prune_level()) {
      continue;
    }
    const AssembledProblem ap = assemble_problem(in, config, node.modes);
    const qp::QpResult r = qp::solve_qp(ap.qp, settings_for(config, node.warm.get(), &cache));
    ++out.nodes;
    out.qp_iterations += r.iterations;
    if (r.status == qp::QpStatus::kInfeasible) {
      continue;
    }
    if (r.status != qp::QpStatus::kOptimal) {
      out.status = SolveStatus::kSolverFailure;
      out.solution.reset();
      out.message = "qp: " + qp::to_string(r.status);
      return out;
    }
    const double obj = r.objective + ap.objective_offset;
    if (obj >= prune_level()) {
      continue;
    }

    int branch = -1;
    double branch_slope = -1.0;
    for (int i = 0; i < K; ++i) {
      if (node.modes[i] != StepMode::kRelaxed) {
        continue;
      }
      const double l = r.x(var_index(i, 0));
      const double l1 = r.x(var_index(i, 1));
      if (footprint_violation(in, config, offsets, i, l, l1) > 1e-9 &&
          std::abs(l1) > branch_slope) {
        branch = i;
        branch_slope = std::abs(l1);
      }
    }
    if (branch < 0) {
      incumbent = obj;
      out.solution = to_solution(ap, r, core::SolveMode::kBranchAndBound);
      continue;
    }
    auto warm = std::make_shared<qp::WarmStart>(qp::WarmStart{r.x, r.duals});
    const bool positive_first = r.x(var_index(branch, 1)) >= 0.0;
    for (StepMode m : positive_first ? std::array{StepMode::kPositive, StepMode::kNegative}
                                     : std::array{StepMode::kNegative, StepMode::kPositive}) {
      Node child{node.modes, obj, order++, warm};
      child.modes[branch] = m;
      open.push(std::move(child));
    }
  }

  if (out.solution) {
    out.status = SolveStatus::kSolved;
  } else {
    out.status = SolveStatus::kInfeasible;
    out.message = "no sign pattern admits a feasible path";
  }
  return out;
}

SolveResult solve_convex_equivalent(const PathInputs & in, const core::PlannerConfig & config)
{
  const std::vector<StepMode> modes(std::max(in.corridor.K, 0), StepMode::kBothPieces);
  return single_solve(in, config, modes, core::SolveMode::kConvexEquivalent);
}

SolveResult solve_fixed_pattern(
  const PathInputs & in, const core::PlannerConfig & config, const std::vector<int> & k)
{
  if (k.size() != static_cast<std::size_t>(std::max(in.corridor.K, 0))) {
    throw core::InputError("planner: sign pattern length mismatch");
  }
  std::vector<StepMode> modes;
  for (int v : k) {
    if (v != 1 && v != -1) {
      throw core::InputError("planner: sign pattern entries must be +1 or -1");
    }
    modes.push_back(v > 0 ? StepMode::kPositive : StepMode::kNegative);
  }
  SolveResult r = single_solve(in, config, modes, core::SolveMode::kBranchAndBound);
  if (r.solution) {
    r.solution->k = k;
  }
  return r;
}

SolveResult solve_path(const PathInputs & in, const core::PlannerConfig & config)
{
  return config.mode == core::SolveMode::kBranchAndBound ? solve_branch_and_bound(in, config)
                                                         : solve_convex_equivalent(in, config);
}

Trajectory extract_trajectory(
  const PathSolution & sol, const std::vector<double> & positions,
  const velocity::VelocityProfile & profile, double ev_abs_s, double t0)
{
  Trajectory tr;
  for (int i = 0; i < sol.K; ++i) {
    tr.points.push_back({ev_abs_s + positions[i], sol.l[i], t0 + (i + 1) * profile.dt});
    tr.headings.push_back(std::atan(sol.l1[i]));
    tr.velocities.push_back(profile.v[i]);
  }
  return tr;
}

std::string format_solution(
  const PathSolution & sol, const std::vector<double> & positions,
  const corridor::Corridor & corridor)
{
  std::ostringstream os;
  os << std::setprecision(10);
  os << "i\ts\tl\tl1\tl2\tl3\tk\tlb\tub\n";
  for (int i = 0; i < sol.K; ++i) {
    os << i + 1 << '\t' << positions[i] << '\t' << sol.l[i] << '\t' << sol.l1[i] << '\t'
       << sol.l2[i] << '\t' << sol.l3[i] << '\t' << sol.k[i] << '\t' << corridor.lb[i] << '\t'
       << corridor.ub[i] << '\n';
  }
  return os.str();
}

}  // namespace hwplan::planner
