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

#include "hwplan/core/types.hpp"

#include <cmath>
#include <string>

namespace hwplan::core
{

namespace
{

void require(bool ok, const std::string & message)
{
  if (!ok) {
    throw InputError("config: " + message);
  }
}

}  // namespace

void PlannerConfig::validate() const
{
  require(num_steps >= 2, "N must be >= 2");
  require(dt > 0.0, "dt must be positive");
  require(dt_replan > 0.0, "dt_replan must be positive");
  const double ratio = dt_replan / dt;
  require(
    std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0,
    "dt_replan must be a positive multiple of dt");
  require(num_segments >= 1, "lambda must be >= 1");
  require(l_mar >= 0.0 && l_buf >= 0.0, "margins must be non-negative");
  require(w_cell > 0.0, "w_cell must be positive");
  for (double w : weights) {
    require(w >= 0.0, "weights must be non-negative");
  }
  require(l1_min < l1_max, "l1 bounds must satisfy min < max");
  require(l2_min < l2_max, "l2 bounds must satisfy min < max");
  require(l3_min < l3_max, "l3 bounds must satisfy min < max");
  require(phi_max > 0.0 && phi_max < std::numbers::pi / 2.0, "phi_max must lie in (0, pi/2)");
  require(v_max > 0.0, "v_max must be positive");
  require(k_min_steps >= 1, "k_min_steps must be >= 1");
  require(qp_tol > 0.0, "qp_tol must be positive");
  require(qp_max_iter >= 1, "qp_max_iter must be >= 1");
  require(min_step_ds > 0.0, "min_step_ds must be positive");
}

}  // namespace hwplan::core
