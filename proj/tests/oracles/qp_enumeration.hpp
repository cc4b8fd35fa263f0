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

#ifndef HWPLAN_TESTS__ORACLES__QP_ENUMERATION_HPP_
#define HWPLAN_TESTS__ORACLES__QP_ENUMERATION_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hwplan/qp/qp_problem.hpp"

namespace hwplan::oracle
{

struct EnumerationResult
{
  Eigen::VectorXd x;
  double objective{std::numeric_limits<double>::infinity()};
  int valid_sets{0};
};

/// Brute-force optimum of a small convex QP: every subset of the inequality rows (A rows and
/// finite bounds) is tried as the active set, its KKT system is solved in the least-squares sense,
/// and the best candidate that is primal feasible with nonnegative multipliers wins.
inline std::optional<EnumerationResult> enumerate_qp(const qp::QpProblem & p, double tol = 1e-9)
{
  const Eigen::Index n = p.n();
  std::vector<Eigen::VectorXd> g_rows;
  std::vector<double> h;
  for (Eigen::Index i = 0; i < p.A.rows(); ++i) {
    if (std::isfinite(p.b(i))) {
      g_rows.push_back(p.A.row(i).transpose());
      h.push_back(p.b(i));
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(p.upper(j))) {
      g_rows.push_back(Eigen::VectorXd::Unit(n, j));
      h.push_back(p.upper(j));
    }
    if (std::isfinite(p.lower(j))) {
      g_rows.push_back(-Eigen::VectorXd::Unit(n, j));
      h.push_back(-p.lower(j));
    }
  }
  const std::size_t rows = g_rows.size();
  const Eigen::Index ne = p.E.rows();
  EnumerationResult best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows); ++mask) {
    std::vector<std::size_t> set;
    for (std::size_t r = 0; r < rows; ++r) {
      if (mask & (std::uint64_t{1} << r)) {
        set.push_back(r);
      }
    }
    const Eigen::Index k = static_cast<Eigen::Index>(set.size());
    const Eigen::Index dim = n + ne + k;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    K.topLeftCorner(n, n) = p.H;
    rhs.head(n) = -p.c;
    if (ne > 0) {
      K.block(0, n, n, ne) = p.E.transpose();
      K.block(n, 0, ne, n) = p.E;
      rhs.segment(n, ne) = p.f;
    }
    for (Eigen::Index a = 0; a < k; ++a) {
      K.block(0, n + ne + a, n, 1) = g_rows[set[a]];
      K.block(n + ne + a, 0, 1, n) = g_rows[set[a]].transpose();
      rhs(n + ne + a) = h[set[a]];
    }
    const Eigen::VectorXd sol = K.completeOrthogonalDecomposition().solve(rhs);
    if (!sol.allFinite() || (K * sol - rhs).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + rhs.cwiseAbs().maxCoeff())) {
      continue;
    }
    const Eigen::VectorXd x = sol.head(n);
    bool ok = true;
    for (std::size_t r = 0; r < rows && ok; ++r) {
      ok = g_rows[r].dot(x) <= h[r] + tol * (1.0 + std::abs(h[r]));
    }
    for (Eigen::Index a = 0; a < k && ok; ++a) {
      ok = sol(n + ne + a) >= -tol * (1.0 + sol.cwiseAbs().maxCoeff());
    }
    if (!ok) {
      continue;
    }
    ++best.valid_sets;
    const double obj = p.objective(x);
    if (obj < best.objective) {
      best.objective = obj;
      best.x = x;
    }
  }
  if (best.valid_sets == 0) {
    return std::nullopt;
  }
  return best;
}

/// Random feasible convex QP with at most max_rows inequality-type rows (A rows plus finite
/// bounds). With rank_deficient, H = B B' has rank < n, c lies in range(H) and every variable is
/// boxed so the optimum stays attained.
inline qp::QpProblem random_feasible_qp(std::mt19937_64 & rng, int max_n, int max_rows, bool rank_deficient)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto randint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = randint(1, max_n);
  qp::QpProblem p = qp::QpProblem::unconstrained(n);
  Eigen::VectorXd xf(n);
  for (int j = 0; j < n; ++j) {
    xf(j) = 2.0 * u(rng);
  }
  if (rank_deficient) {
    const int r = n > 1 ? randint(1, n - 1) : 0;
    Eigen::MatrixXd B(n, std::max(r, 1));
    for (int a = 0; a < B.rows(); ++a) {
      for (int b = 0; b < B.cols(); ++b) {
        B(a, b) = r == 0 ? 0.0 : u(rng);
      }
    }
    p.H = B * B.transpose();
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) {
      w(j) = 3.0 * u(rng);
    }
    p.c = p.H * w;
    for (int j = 0; j < n; ++j) {
      p.lower(j) = xf(j) - 0.5 - u01(rng);
      p.upper(j) = xf(j) + 0.5 + u01(rng);
    }
  } else {
    Eigen::MatrixXd B(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        B(a, b) = u(rng);
      }
    }
    p.H = B * B.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < n; ++j) {
      p.c(j) = 4.0 * u(rng);
    }
  }
  p.H = 0.5 * (p.H + p.H.transpose());

  int used = 0;
  for (int j = 0; j < n; ++j) {
    used += std::isfinite(p.lower(j)) + std::isfinite(p.upper(j));
  }
  const int budget = std::max(0, max_rows - used);
  const int bound_rows = rank_deficient ? 0 : randint(0, std::min(budget, n));
  for (int k = 0; k < bound_rows; ++k) {
    const int j = randint(0, n - 1);
    if (u01(rng) < 0.5 && !std::isfinite(p.upper(j))) {
      p.upper(j) = xf(j) + 0.3 * u01(rng);
      ++used;
    } else if (!std::isfinite(p.lower(j))) {
      p.lower(j) = xf(j) - 0.3 * u01(rng);
      ++used;
    }
  }
  const int ineq = randint(0, std::max(0, max_rows - used));
  p.A.resize(ineq, n);
  p.b.resize(ineq);
  for (int i = 0; i < ineq; ++i) {
    for (int j = 0; j < n; ++j) {
      p.A(i, j) = u(rng);
    }
    p.b(i) = p.A.row(i).dot(xf) + 0.5 * u01(rng);
  }
  const int neq = n > 1 ? randint(0, std::min(2, n - 1)) : 0;
  p.E.resize(neq, n);
  p.f.resize(neq);
  for (int i = 0; i < neq; ++i) {
    for (int j = 0; j < n; ++j) {
      p.E(i, j) = u(rng);
    }
    p.f(i) = p.E.row(i).dot(xf);
  }
  return p;
}

}  // namespace hwplan::oracle

#endif  // HWPLAN_TESTS__ORACLES__QP_ENUMERATION_HPP_
