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

#ifndef HWPLAN__QP__KKT_HPP_
#define HWPLAN__QP__KKT_HPP_

#include <algorithm>

#include "hwplan/qp/qp_problem.hpp"

namespace hwplan::qp
{

/// Infinity-norm KKT residuals of a primal/dual pair.
struct KktReport
{
  double stationarity{0.0};
  double primal{0.0};
  double dual{0.0};  // sign violations of inequality and bound multipliers
  double complementarity{0.0};

  double max() const { return std::max({stationarity, primal, dual, complementarity}); }
};

/// Evaluates the optimality conditions directly from the problem data; shares no code with the
/// solver. Throws QpInputError on dimension mismatch.
KktReport check_kkt(const QpProblem & problem, const Eigen::VectorXd & x, const QpDuals & duals);

}  // namespace hwplan::qp

#endif  // HWPLAN__QP__KKT_HPP_
