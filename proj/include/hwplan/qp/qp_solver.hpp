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

#ifndef HWPLAN__QP__QP_SOLVER_HPP_
#define HWPLAN__QP__QP_SOLVER_HPP_

#include <memory>
#include <optional>
#include <string>

#include "hwplan/qp/kkt.hpp"
#include "hwplan/qp/qp_problem.hpp"

namespace hwplan::qp
{

enum class QpStatus { kOptimal, kInfeasible, kIterationLimit, kNumericalFailure };

std::string to_string(QpStatus status);

struct QpResult
{
  QpStatus status{QpStatus::kNumericalFailure};
  Eigen::VectorXd x;
  QpDuals duals;
  double objective{0.0};
  int iterations{0};
  double primal_residual{0.0};
  double dual_residual{0.0};
  bool polished{false};
};

/// Optional starting point. Duals, when present, seed the active-set guess of the polish step.
struct WarmStart
{
  Eigen::VectorXd x;
  std::optional<QpDuals> duals;
};

/// Keeps the equality elimination between solves that share H, c, E and f, as branch-and-bound
/// nodes do; a mismatch simply recomputes it. Use one instance per thread.
class SolveCache
{
public:
  struct Impl;
  std::shared_ptr<Impl> impl;
};

struct QpSettings
{
  double tol{1e-6};
  int max_iter{20000};
  double infeasibility_tol{1e-4};
  const WarmStart * warm_start{nullptr};
  SolveCache * cache{nullptr};
};

/// Dense convex QP solver.
///
/// Equality constraints are eliminated through an orthonormal null-space basis; the reduced
/// problem is equilibrated and solved by ADMM operator splitting. Once the splitting iterates
/// settle, the active set they identify is polished by exact equality-constrained KKT solves,
/// repaired until primal feasibility and multiplier signs hold. Optimal is reported only when
/// check_kkt residuals are below tol.
///
/// Throws QpInputError for malformed problems (including H with an eigenvalue below -1e-8).
QpResult solve_qp(const QpProblem & problem, const QpSettings & settings = {});

}  // namespace hwplan::qp

#endif  // HWPLAN__QP__QP_SOLVER_HPP_
