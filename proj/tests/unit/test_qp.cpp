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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hwplan/qp/kkt.hpp"
#include "hwplan/qp/qp_solver.hpp"
#include "oracles/qp_enumeration.hpp"

namespace
{

using hwplan::qp::check_kkt;
using hwplan::qp::QpDuals;
using hwplan::qp::QpInputError;
using hwplan::qp::QpProblem;
using hwplan::qp::QpStatus;
using hwplan::qp::solve_qp;

constexpr double kInf = std::numeric_limits<double>::infinity();

QpDuals zero_duals(const QpProblem & p)
{
  return {Eigen::VectorXd::Zero(p.A.rows()), Eigen::VectorXd::Zero(p.E.rows()),
          Eigen::VectorXd::Zero(p.n())};
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(QpSolver, UnconstrainedScalar)
{
  QpProblem p = QpProblem::unconstrained(1);
  p.H(0, 0) = 1.0;
  p.c(0) = -1.0;
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), 1.0, 1e-9);
  EXPECT_NEAR(r.objective, -0.5, 1e-9);
}

TEST(QpSolver, ActiveLowerBound)
{
  QpProblem p = QpProblem::unconstrained(1);
  p.H(0, 0) = 2.0;
  p.lower(0) = 2.0;
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), 2.0, 1e-9);
  EXPECT_NEAR(r.objective, 4.0, 1e-9);
  EXPECT_LT(r.duals.bound(0), 0.0);  // lower side active
}

TEST(QpSolver, EqualityConstrained)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.H = Eigen::MatrixXd::Identity(2, 2);
  p.E = Eigen::MatrixXd::Ones(1, 2);
  p.f = Eigen::VectorXd::Constant(1, 2.0);
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), 1.0, 1e-9);
  EXPECT_NEAR(r.x(1), 1.0, 1e-9);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
  EXPECT_NEAR(r.duals.eq(0), -1.0, 1e-9);
}

TEST(QpSolver, InequalityRowActive)
{
  // min (x-3)^2 + (y-3)^2 s.t. x + y <= 2 -> (1, 1), multiplier 4.
  QpProblem p = QpProblem::unconstrained(2);
  p.H = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  p.c << -6.0, -6.0;
  p.A = Eigen::MatrixXd::Ones(1, 2);
  p.b = Eigen::VectorXd::Constant(1, 2.0);
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), 1.0, 1e-9);
  EXPECT_NEAR(r.x(1), 1.0, 1e-9);
  EXPECT_NEAR(r.duals.ineq(0), 4.0, 1e-8);
  EXPECT_LE(check_kkt(p, r.x, r.duals).max(), 1e-8);
}

TEST(QpSolver, DetectsInfeasibleRows)
{
  QpProblem p = QpProblem::unconstrained(1);
  p.H(0, 0) = 1.0;
  p.A.resize(2, 1);
  p.A << 1.0, -1.0;
  p.b.resize(2);
  p.b << 1.0, -2.0;  // x <= 1 and x >= 2
  const auto r = solve_qp(p);
  EXPECT_EQ(r.status, QpStatus::kInfeasible);
}

TEST(QpSolver, DetectsInfeasibleMixed)
{
  // x + y = 4 with both variables boxed to [0, 1].
  QpProblem p = QpProblem::unconstrained(2);
  p.H = Eigen::MatrixXd::Identity(2, 2);
  p.E = Eigen::MatrixXd::Ones(1, 2);
  p.f = Eigen::VectorXd::Constant(1, 4.0);
  p.lower.setZero();
  p.upper.setOnes();
  EXPECT_EQ(solve_qp(p).status, QpStatus::kInfeasible);
}

TEST(QpSolver, DetectsInconsistentEqualities)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.H = Eigen::MatrixXd::Identity(2, 2);
  p.E.resize(2, 2);
  p.E << 1.0, 1.0, 2.0, 2.0;
  p.f.resize(2);
  p.f << 1.0, 3.0;
  EXPECT_EQ(solve_qp(p).status, QpStatus::kInfeasible);
}

TEST(QpSolver, RedundantEqualities)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.H = Eigen::MatrixXd::Identity(2, 2);
  p.E.resize(2, 2);
  p.E << 1.0, 1.0, 2.0, 2.0;
  p.f.resize(2);
  p.f << 2.0, 4.0;
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), 1.0, 1e-9);
  EXPECT_NEAR(r.x(1), 1.0, 1e-9);
}

TEST(QpSolver, FullyDeterminedByEqualities)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.E = Eigen::MatrixXd::Identity(2, 2);
  p.f.resize(2);
  p.f << 0.5, -0.25;
  p.c << 1.0, 1.0;
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), 0.5, 1e-12);
  EXPECT_NEAR(r.objective, 0.25, 1e-12);
  p.upper(0) = 0.0;
  EXPECT_EQ(solve_qp(p).status, QpStatus::kInfeasible);
}

TEST(QpSolver, LinearProgramWithBox)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.c << 1.0, -2.0;
  p.lower << -1.0, -1.0;
  p.upper << 1.0, 3.0;
  const auto r = solve_qp(p);
  ASSERT_EQ(r.status, QpStatus::kOptimal);
  EXPECT_NEAR(r.x(0), -1.0, 1e-9);
  EXPECT_NEAR(r.x(1), 3.0, 1e-9);
}

TEST(QpSolver, RejectsMalformedProblems)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.H.resize(3, 3);
  EXPECT_THROW(solve_qp(p), QpInputError);

  p = QpProblem::unconstrained(2);
  p.H << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(solve_qp(p), QpInputError);  // asymmetric

  p = QpProblem::unconstrained(2);
  p.H << 1.0, 0.0, 0.0, -1e-3;
  EXPECT_THROW(solve_qp(p), QpInputError);  // indefinite

  p = QpProblem::unconstrained(1);
  p.lower(0) = 1.0;
  p.upper(0) = 0.0;
  EXPECT_THROW(solve_qp(p), QpInputError);

  p = QpProblem::unconstrained(2);
  p.A = Eigen::MatrixXd::Ones(1, 3);
  p.b = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(solve_qp(p), QpInputError);
}

TEST(QpSolver, TinyNegativeEigenvalueTolerated)
{
  QpProblem p = QpProblem::unconstrained(2);
  p.H << 1.0, 0.0, 0.0, -1e-10;
  p.lower << -1.0, -1.0;
  p.upper << 1.0, 1.0;
  EXPECT_NO_THROW(solve_qp(p));
}

TEST(QpKkt, AnalyticOptimaHaveZeroResiduals)
{
  QpProblem p = QpProblem::unconstrained(1);
  p.H(0, 0) = 1.0;
  p.c(0) = -1.0;
  EXPECT_LE(check_kkt(p, Eigen::VectorXd::Constant(1, 1.0), zero_duals(p)).max(), 1e-8);

  QpProblem q = QpProblem::unconstrained(1);
  q.H(0, 0) = 2.0;
  q.lower(0) = 2.0;
  QpDuals dq = zero_duals(q);
  dq.bound(0) = -4.0;
  EXPECT_LE(check_kkt(q, Eigen::VectorXd::Constant(1, 2.0), dq).max(), 1e-8);

  QpProblem e = QpProblem::unconstrained(2);
  e.H = Eigen::MatrixXd::Identity(2, 2);
  e.E = Eigen::MatrixXd::Ones(1, 2);
  e.f = Eigen::VectorXd::Constant(1, 2.0);
  QpDuals de = zero_duals(e);
  de.eq(0) = -1.0;
  EXPECT_LE(check_kkt(e, Eigen::VectorXd::Ones(2), de).max(), 1e-8);
}

TEST(QpKkt, PerturbedOptimumIsDetected)
{
  QpProblem p = QpProblem::unconstrained(1);
  p.H(0, 0) = 1.0;
  p.c(0) = -1.0;
  EXPECT_GT(check_kkt(p, Eigen::VectorXd::Constant(1, 1.1), zero_duals(p)).stationarity, 1e-3);
}

TEST(QpKkt, PrimalResidualIsEqualityViolation)
{
  QpProblem p = QpProblem::unconstrained(3);
  p.E.resize(2, 3);
  p.E << 1.0, 2.0, 0.0, 0.0, 1.0, -1.0;
  p.f.resize(2);
  p.f << 1.0, 0.5;
  const Eigen::Vector3d x(0.3, -0.7, 2.0);
  const double expected = (p.E * x - p.f).cwiseAbs().maxCoeff();
  EXPECT_DOUBLE_EQ(check_kkt(p, x, zero_duals(p)).primal, expected);
}

TEST(QpKkt, DimensionMismatchThrows)
{
  QpProblem p = QpProblem::unconstrained(2);
  EXPECT_THROW(check_kkt(p, Eigen::VectorXd::Zero(3), zero_duals(p)), QpInputError);
}

TEST(QpSolver, MatchesEnumerationOracle)
{
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 60; ++t) {
    const bool deficient = t % 3 == 2;
    const QpProblem p = hwplan::oracle::random_feasible_qp(rng, deficient ? 5 : 8, 9, deficient);
    const auto oracle = hwplan::oracle::enumerate_qp(p);
    ASSERT_TRUE(oracle.has_value()) << "trial " << t;
    const auto r = solve_qp(p);
    ASSERT_EQ(r.status, QpStatus::kOptimal) << "trial " << t;
    EXPECT_LE(rel_gap(r.objective, oracle->objective), 1e-6) << "trial " << t;
    EXPECT_LE(check_kkt(p, r.x, r.duals).max(), 1e-6) << "trial " << t;
  }
}

TEST(QpSolver, ArgminInvariantUnderCostScaling)
{
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    QpProblem p = hwplan::oracle::random_feasible_qp(rng, 8, 10, false);
    const auto base = solve_qp(p);
    ASSERT_EQ(base.status, QpStatus::kOptimal);
    for (double gamma : {1e-3, 0.5, 7.0, 1e3}) {
      QpProblem s = p;
      s.H *= gamma;
      s.c *= gamma;
      const auto r = solve_qp(s);
      ASSERT_EQ(r.status, QpStatus::kOptimal);
      EXPECT_LE((r.x - base.x).cwiseAbs().maxCoeff(), 1e-8) << "trial " << t << " gamma " << gamma;
    }
  }
}

TEST(QpSolver, AddingConstraintsNeverLowersObjective)
{
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int chain = 0; chain < 20; ++chain) {
    QpProblem p = hwplan::oracle::random_feasible_qp(rng, 6, 4, false);
    const Eigen::Index n = p.n();
    auto prev = solve_qp(p);
    ASSERT_EQ(prev.status, QpStatus::kOptimal);
    for (int step = 0; step < 6; ++step) {
      Eigen::RowVectorXd row(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        row(j) = u(rng);
      }
      // Cut off the current optimum a little, keeping the problem feasible most of the time.
      const double rhs = row.dot(prev.x) - 0.2 * std::abs(u(rng));
      p.A.conservativeResize(p.A.rows() + 1, n);
      p.A.row(p.A.rows() - 1) = row;
      p.b.conservativeResize(p.b.size() + 1);
      p.b(p.b.size() - 1) = rhs;
      const auto next = solve_qp(p);
      if (next.status == QpStatus::kInfeasible) {
        break;
      }
      ASSERT_EQ(next.status, QpStatus::kOptimal);
      EXPECT_GE(next.objective, prev.objective - 1e-9 * (1.0 + std::abs(prev.objective)));
      prev = next;
    }
  }
}

TEST(QpSolver, WarmStartReproducesSolution)
{
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const QpProblem p = hwplan::oracle::random_feasible_qp(rng, 8, 10, false);
    const auto cold = solve_qp(p);
    ASSERT_EQ(cold.status, QpStatus::kOptimal);
    hwplan::qp::WarmStart ws{cold.x, cold.duals};
    hwplan::qp::QpSettings settings;
    settings.warm_start = &ws;
    const auto warm = solve_qp(p, settings);
    ASSERT_EQ(warm.status, QpStatus::kOptimal);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * (1.0 + std::abs(cold.objective)));
    EXPECT_LE(warm.iterations, cold.iterations);
  }
}

TEST(QpSolver, IterationLimitIsReported)
{
  // A degenerate LP whose optimum polishing cannot reach in a single splitting iteration.
  std::mt19937_64 rng(5);
  const QpProblem p = hwplan::oracle::random_feasible_qp(rng, 8, 10, false);
  hwplan::qp::QpSettings settings;
  settings.max_iter = 1;
  const auto r = solve_qp(p, settings);
  EXPECT_TRUE(r.status == QpStatus::kOptimal || r.status == QpStatus::kIterationLimit);
}

TEST(QpDump, RoundTrip)
{
  std::mt19937_64 rng(1);
  QpProblem p = hwplan::oracle::random_feasible_qp(rng, 6, 8, false);
  p.upper(0) = kInf;
  const QpProblem q = hwplan::qp::parse_problem(hwplan::qp::format_problem(p));
  EXPECT_EQ(q.n(), p.n());
  EXPECT_TRUE(q.H.isApprox(p.H, 0.0) || (q.H - p.H).norm() == 0.0);
  EXPECT_EQ(q.A, p.A);
  EXPECT_EQ(q.upper(0), kInf);
  EXPECT_THROW(hwplan::qp::parse_problem("qp 2\nH 2 2\n1 0\n0"), QpInputError);
}

}  // namespace
