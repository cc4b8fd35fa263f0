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

#include "hwplan/planner/path_problem.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hwplan::planner
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const PathInputs & in, const core::PlannerConfig & config, std::size_t modes)
{
  const auto & c = in.corridor;
  const auto K = static_cast<std::size_t>(c.K);
  if (c.K < 1) {
    throw core::InputError("planner: corridor is empty");
  }
  if (c.cells.size() != K || c.lb.size() != K || c.ub.size() != K) {
    throw core::InputError("planner: corridor arrays disagree with K");
  }
  if (in.positions.size() < K) {
    throw core::InputError("planner: corridor/positions length mismatch");
  }
  if (in.l_ref.size() != K) {
    throw core::InputError("planner: reference length mismatch");
  }
  if (modes != K) {
    throw core::InputError("planner: one step mode per corridor step required");
  }
  const double slope = std::tan(config.phi_max);
  const double tol = 1e-9;
  if (std::abs(in.init.l1) > slope + tol || in.init.l1 < config.l1_min - tol ||
      in.init.l1 > config.l1_max + tol) {
    throw core::InputError("planner: initial slope outside bounds");
  }
  if (in.init.l2 < config.l2_min - tol || in.init.l2 > config.l2_max + tol) {
    throw core::InputError("planner: initial curvature outside bounds");
  }
}

}  // namespace

AssembledProblem assemble_problem(
  const PathInputs & in, const core::PlannerConfig & config, const std::vector<StepMode> & modes)
{
  check_inputs(in, config, modes.size());
  const int K = in.corridor.K;
  const int n = 4 * K;
  const int lambda = config.num_segments;
  const auto & geo = in.geometry;
  const std::vector<double> offsets = geometry::segment_offsets(lambda);

  AssembledProblem out;
  out.K = K;
  out.ds.resize(K);
  double prev_s = 0.0;
  for (int i = 0; i < K; ++i) {
    out.ds[i] = in.positions[i] - prev_s;
    prev_s = in.positions[i];
    if (!(out.ds[i] >= config.min_step_ds)) {
      throw core::InputError(
        "planner: degenerate stop, step " + std::to_string(i + 1) + " advances " +
        std::to_string(out.ds[i]) + " m");
    }
  }

  bool both = false;
  for (StepMode m : modes) {
    both = both || m == StepMode::kBothPieces;
  }
  const int pieces = both ? 2 : 1;
  out.rows_per_step = 2 * lambda * pieces;
  out.footprint_rows = out.rows_per_step * K;

  qp::QpProblem & p = out.qp;
  p = qp::QpProblem::unconstrained(n);
  p.A = Eigen::MatrixXd::Zero(out.footprint_rows + K, n);
  p.b = Eigen::VectorXd::Constant(out.footprint_rows + K, kInf);

  int row = 0;
  for (int i = 0; i < K; ++i) {
    const double ub = in.corridor.ub[i] - config.l_mar - geo.b;
    const double lb = in.corridor.lb[i] + config.l_mar + geo.b;
    const double ds_seg = in.corridor.cells[i].cell_len / lambda;
    const int li = var_index(i, 0);
    const int l1i = var_index(i, 1);

    std::vector<double> kappas;
    switch (modes[i]) {
      case StepMode::kRelaxed:
        kappas = {0.0};
        break;
      case StepMode::kPositive:
        kappas = {1.0};
        break;
      case StepMode::kNegative:
        kappas = {-1.0};
        break;
      case StepMode::kBothPieces:
        kappas = {1.0, -1.0};
        break;
    }
    int used = 0;
    for (double kappa : kappas) {
      for (int j = 0; j < lambda; ++j) {
        p.A(row, li) = 1.0;
        p.A(row, l1i) = geo.a * kappa + offsets[j] * ds_seg;
        p.b(row) = ub;
        ++row;
        ++used;
      }
      for (int j = 0; j < lambda; ++j) {
        p.A(row, li) = -1.0;
        p.A(row, l1i) = geo.a * kappa - offsets[j] * ds_seg;
        p.b(row) = -lb;
        ++row;
        ++used;
      }
    }
    // Steps with fewer pieces than the widest keep inert rows so the layout stays uniform.
    for (; used < out.rows_per_step; ++used, ++row) {
      p.A(row, li) = 1.0;
    }
  }
  for (int i = 0; i < K; ++i, ++row) {
    const int l1i = var_index(i, 1);
    switch (modes[i]) {
      case StepMode::kPositive:
        p.A(row, l1i) = -1.0;
        p.b(row) = 0.0;
        break;
      case StepMode::kNegative:
        p.A(row, l1i) = 1.0;
        p.b(row) = 0.0;
        break;
      default:
        p.A(row, l1i) = -1.0;
        break;
    }
  }

  for (int i = 0; i < K; ++i) {
    p.lower(var_index(i, 0)) = in.road_lb;
    p.upper(var_index(i, 0)) = in.road_ub;
    p.lower(var_index(i, 1)) = config.l1_min;
    p.upper(var_index(i, 1)) = config.l1_max;
    p.lower(var_index(i, 2)) = config.l2_min;
    p.upper(var_index(i, 2)) = config.l2_max;
    p.lower(var_index(i, 3)) = config.l3_min;
    p.upper(var_index(i, 3)) = config.l3_max;
  }

  p.E = Eigen::MatrixXd::Zero(3 * K, n);
  p.f = Eigen::VectorXd::Zero(3 * K);
  for (int i = 0; i < K; ++i) {
    const double d = out.ds[i];
    const int r = 3 * i;
    p.E(r, var_index(i, 2)) = 1.0;
    p.E(r, var_index(i, 3)) = -d;
    p.E(r + 1, var_index(i, 1)) = 1.0;
    p.E(r + 1, var_index(i, 2)) = -d;
    p.E(r + 1, var_index(i, 3)) = -0.5 * d * d;
    p.E(r + 2, var_index(i, 0)) = 1.0;
    p.E(r + 2, var_index(i, 1)) = -d;
    p.E(r + 2, var_index(i, 2)) = -0.5 * d * d;
    p.E(r + 2, var_index(i, 3)) = -d * d * d / 6.0;
    if (i == 0) {
      p.f(r) = in.init.l2;
      p.f(r + 1) = in.init.l1;
      p.f(r + 2) = in.init.l0;
    } else {
      p.E(r, var_index(i - 1, 2)) = -1.0;
      p.E(r + 1, var_index(i - 1, 1)) = -1.0;
      p.E(r + 2, var_index(i - 1, 0)) = -1.0;
    }
  }

  // Objective, doubled into the 1/2 x'Hx + c'x convention.
  const auto & w = config.weights;
  for (int i = 0; i < K; ++i) {
    p.H(var_index(i, 0), var_index(i, 0)) += 2.0 * w[0];
    p.H(var_index(i, 1), var_index(i, 1)) += 2.0 * w[1];
    p.H(var_index(i, 2), var_index(i, 2)) += 2.0 * w[2];
    p.H(var_index(i, 3), var_index(i, 3)) += 2.0 * w[3];
    p.c(var_index(i, 0)) = -2.0 * w[0] * in.l_ref[i];
    out.objective_offset += w[0] * in.l_ref[i] * in.l_ref[i];
  }
  for (int i = 1; i < K; ++i) {
    for (int dv : {0, 1}) {
      const double wd = dv == 0 ? w[4] : w[5];
      const int a = var_index(i, dv);
      const int b = var_index(i - 1, dv);
      p.H(a, a) += 2.0 * wd;
      p.H(b, b) += 2.0 * wd;
      p.H(a, b) -= 2.0 * wd;
      p.H(b, a) -= 2.0 * wd;
    }
  }
  return out;
}

AssembledProblem assemble_problem(
  const PathInputs & in, const core::PlannerConfig & config,
  const std::optional<std::vector<int>> & sign_pattern)
{
  const auto K = static_cast<std::size_t>(std::max(in.corridor.K, 0));
  std::vector<StepMode> modes(K, StepMode::kBothPieces);
  if (sign_pattern) {
    if (sign_pattern->size() != K) {
      throw core::InputError("planner: sign pattern length mismatch");
    }
    for (std::size_t i = 0; i < K; ++i) {
      const int k = (*sign_pattern)[i];
      if (k != 1 && k != -1) {
        throw core::InputError("planner: sign pattern entries must be +1 or -1");
      }
      modes[i] = k > 0 ? StepMode::kPositive : StepMode::kNegative;
    }
  }
  return assemble_problem(in, config, modes);
}

std::vector<KinematicState> propagate_kinematics(
  const InitialLateralState & init, const std::vector<double> & l3, const std::vector<double> & ds)
{
  if (l3.size() != ds.size()) {
    throw core::InputError("planner: jerk and step lists differ in length");
  }
  std::vector<KinematicState> out;
  out.reserve(l3.size());
  KinematicState prev{init.l0, init.l1, init.l2};
  for (std::size_t i = 0; i < l3.size(); ++i) {
    const double d = ds[i];
    KinematicState s;
    s.l2 = prev.l2 + l3[i] * d;
    s.l1 = prev.l1 + s.l2 * d + 0.5 * l3[i] * d * d;
    s.l = prev.l + s.l1 * d + 0.5 * s.l2 * d * d + l3[i] * d * d * d / 6.0;
    out.push_back(s);
    prev = s;
  }
  return out;
}

std::vector<double> reference_lateral(
  const corridor::Corridor & corridor, const core::RoadModel & road,
  const core::VehicleDims & dims, const core::PlannerConfig & config, double previous)
{
  std::vector<double> out;
  out.reserve(corridor.cells.size());
  double prev = previous;
  const double clearance = 0.5 * dims.width + config.l_mar;
  for (const auto & cell : corridor.cells) {
    double best = cell.center();
    double best_dist = kInf;
    for (double c : road.lane_centerlines) {
      if (c - clearance < cell.l_lb || c + clearance > cell.l_ub) {
        continue;
      }
      const double d = std::abs(c - prev);
      if (d < best_dist - 1e-12) {
        best = c;
        best_dist = d;
      }
    }
    out.push_back(best);
    prev = best;
  }
  return out;
}

}  // namespace hwplan::planner
