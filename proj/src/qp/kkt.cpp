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

#include "hwplan/qp/kkt.hpp"

#include <cmath>

namespace hwplan::qp
{

KktReport check_kkt(const QpProblem & p, const Eigen::VectorXd & x, const QpDuals & duals)
{
  const Eigen::Index n = p.c.size();
  if (x.size() != n || duals.ineq.size() != p.A.rows() || duals.eq.size() != p.E.rows() ||
      duals.bound.size() != n || p.H.rows() != n || p.A.cols() != n || p.E.cols() != n) {
    throw QpInputError("qp: check_kkt dimension mismatch");
  }

  KktReport r;
  const Eigen::VectorXd grad =
    p.H * x + p.c + p.A.transpose() * duals.ineq + p.E.transpose() * duals.eq + duals.bound;
  r.stationarity = n > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;

  for (Eigen::Index i = 0; i < p.A.rows(); ++i) {
    const double slack = p.b(i) - p.A.row(i).dot(x);
    const double y = duals.ineq(i);
    r.primal = std::max(r.primal, -slack);
    r.dual = std::max(r.dual, -y);
    if (std::isfinite(slack)) {
      r.complementarity = std::max(r.complementarity, std::abs(std::max(y, 0.0) * slack));
    } else if (y > 0.0) {
      r.complementarity = std::max(r.complementarity, std::abs(y));
    }
  }
  if (p.E.rows() > 0) {
    r.primal = std::max(r.primal, (p.E * x - p.f).cwiseAbs().maxCoeff());
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    r.primal = std::max({r.primal, p.lower(j) - x(j), x(j) - p.upper(j)});
    const double z = duals.bound(j);
    if (z > 0.0) {
      if (std::isfinite(p.upper(j))) {
        r.complementarity = std::max(r.complementarity, std::abs(z * (p.upper(j) - x(j))));
      } else {
        r.dual = std::max(r.dual, z);
      }
    } else if (z < 0.0) {
      if (std::isfinite(p.lower(j))) {
        r.complementarity = std::max(r.complementarity, std::abs(z * (x(j) - p.lower(j))));
      } else {
        r.dual = std::max(r.dual, -z);
      }
    }
  }
  return r;
}

}  // namespace hwplan::qp
