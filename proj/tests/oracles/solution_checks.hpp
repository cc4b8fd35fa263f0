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

#ifndef HWPLAN_TESTS__ORACLES__SOLUTION_CHECKS_HPP_
#define HWPLAN_TESTS__ORACLES__SOLUTION_CHECKS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hwplan/planner/miqp.hpp"

namespace hwplan::oracle
{

/// Worst violation of each constraint family on a solution (0 when satisfied). Recomputed from
/// the raw inputs, without the assembler.
struct SolutionCheck
{
  double containment{0.0};        // linearized footprint vs corridor minus margin
  double exact_containment{0.0};  // same with the exact half width
  double road{0.0};
  double kinematics{0.0};  // recurrence residual on l, l', l''
  double bounds{0.0};      // derivative limits
  double sign{0.0};        // max(-k l', 0)

  double worst() const
  {
    return std::max({containment, exact_containment, road, kinematics, bounds, sign});
  }
};

inline SolutionCheck check_solution(
  const planner::PathInputs & in, const planner::PathSolution & sol,
  const core::PlannerConfig & config)
{
  SolutionCheck out;
  auto worse = [](double & slot, double v) { slot = std::max(slot, v); };
  const int lambda = config.num_segments;
  const double half_w = 0.5 * in.geometry.width;

  double l = in.init.l0;
  double l1 = in.init.l1;
  double l2 = in.init.l2;
  double s_prev = 0.0;
  for (int i = 0; i < sol.K; ++i) {
    const double ds = in.positions[i] - s_prev;
    s_prev = in.positions[i];
    const double l3 = sol.l3[i];
    l2 = l2 + l3 * ds;
    l1 = l1 + l2 * ds + 0.5 * l3 * ds * ds;
    l = l + l1 * ds + 0.5 * l2 * ds * ds + l3 * ds * ds * ds / 6.0;
    worse(out.kinematics, std::abs(l - sol.l[i]));
    worse(out.kinematics, std::abs(l1 - sol.l1[i]));
    worse(out.kinematics, std::abs(l2 - sol.l2[i]));
    // Continue from the solver's values so one residual does not snowball down the chain.
    l = sol.l[i];
    l1 = sol.l1[i];
    l2 = sol.l2[i];

    worse(out.road, sol.l[i] - in.road_ub);
    worse(out.road, in.road_lb - sol.l[i]);
    worse(out.bounds, sol.l1[i] - config.l1_max);
    worse(out.bounds, config.l1_min - sol.l1[i]);
    worse(out.bounds, sol.l2[i] - config.l2_max);
    worse(out.bounds, config.l2_min - sol.l2[i]);
    worse(out.bounds, sol.l3[i] - config.l3_max);
    worse(out.bounds, config.l3_min - sol.l3[i]);
    worse(out.sign, -sol.k[i] * sol.l1[i]);

    const double eps = in.geometry.a * std::abs(sol.l1[i]) + in.geometry.b;
    const double eps_exact = half_w * std::sqrt(1.0 + sol.l1[i] * sol.l1[i]);
    const double seg = in.corridor.cells[i].cell_len / lambda;
    const double hi = in.corridor.ub[i] - config.l_mar;
    const double lo = in.corridor.lb[i] + config.l_mar;
    for (int j = 1; j <= lambda; ++j) {
      const double centre = sol.l[i] + (j - 0.5 * (lambda + 1)) * seg * sol.l1[i];
      worse(out.containment, centre + eps - hi);
      worse(out.containment, lo - (centre - eps));
      worse(out.exact_containment, centre + eps_exact - hi);
      worse(out.exact_containment, lo - (centre - eps_exact));
    }
  }
  return out;
}

struct EnumeratedOptimum
{
  std::optional<double> objective;  // empty when no pattern is feasible
  std::vector<int> k;
  int feasible_patterns{0};
};

/// Exhaustive search over all 2^K sign patterns.
inline EnumeratedOptimum enumerate_sign_patterns(
  const planner::PathInputs & in, const core::PlannerConfig & config)
{
  EnumeratedOptimum best;
  const int K = in.corridor.K;
  std::vector<int> k(K);
  for (unsigned mask = 0; mask < (1u << K); ++mask) {
    for (int i = 0; i < K; ++i) {
      k[i] = (mask >> i) & 1u ? -1 : 1;
    }
    const planner::SolveResult r = planner::solve_fixed_pattern(in, config, k);
    if (r.status != planner::SolveStatus::kSolved) {
      continue;
    }
    ++best.feasible_patterns;
    if (!best.objective || r.solution->objective < *best.objective) {
      best.objective = r.solution->objective;
      best.k = k;
    }
  }
  return best;
}

}  // namespace hwplan::oracle

#endif  // HWPLAN_TESTS__ORACLES__SOLUTION_CHECKS_HPP_
