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

#include "hwplan/qp/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

namespace hwplan::qp
{

namespace detail
{

/// Null-space parametrization x = x0 + Z w of the equalities (Z orthonormal) together with the
/// reduced objective. Depends only on H, c, E and f.
struct NullSpace
{
  Eigen::MatrixXd Z;
  Eigen::VectorXd x0;
  Eigen::MatrixXd P;
  Eigen::VectorXd q;
  bool infeasible{false};
  // Equality factorization, kept for the multiplier recovery.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  Eigen::Index rank{0};
};

}  // namespace detail

struct SolveCache::Impl
{
  Eigen::MatrixXd H;
  Eigen::VectorXd c;
  Eigen::MatrixXd E;
  Eigen::VectorXd f;
  std::shared_ptr<const detail::NullSpace> ns;

  bool matches(const QpProblem & p) const
  {
    return H.rows() == p.H.rows() && E.rows() == p.E.rows() && E.cols() == p.E.cols() &&
           c.size() == p.c.size() && H == p.H && c == p.c && E == p.E && f == p.f;
  }
};

std::string to_string(QpStatus status)
{
  switch (status) {
    case QpStatus::kOptimal:
      return "Optimal";
    case QpStatus::kInfeasible:
      return "Infeasible";
    case QpStatus::kIterationLimit:
      return "IterationLimit";
    case QpStatus::kNumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

using Eigen::MatrixXd;
using Eigen::VectorXd;

double inf_norm(const VectorXd & v) { return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0; }

/// Origin of a reduced-space constraint row.
struct RowOrigin
{
  bool is_bound;
  Eigen::Index index;
};

using detail::NullSpace;

/// Equality-free form over w: rows lo <= C w <= hi stacked from A and the finite bounds.
struct Reduction
{
  std::shared_ptr<const NullSpace> ns;
  MatrixXd C;
  VectorXd lo;
  VectorXd hi;
  std::vector<RowOrigin> origin;
  bool infeasible{false};
};

void check_psd(const QpProblem & p)
{
  const Eigen::Index n = p.n();
  if (n == 0) {
    return;
  }
  Eigen::LLT<MatrixXd> llt(p.H + 1e-8 * MatrixXd::Identity(n, n));
  if (llt.info() == Eigen::Success) {
    return;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(p.H, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues().minCoeff();
  if (smallest < -1e-8) {
    throw QpInputError("qp: H is not positive semidefinite (smallest eigenvalue " +
                       std::to_string(smallest) + ")");
  }
}

std::shared_ptr<NullSpace> null_space(const QpProblem & p)
{
  auto ns = std::make_shared<NullSpace>();
  const Eigen::Index n = p.n();
  const double feas_tol = 1e-9;

  if (p.E.rows() == 0) {
    ns->Z = MatrixXd::Identity(n, n);
    ns->x0 = VectorXd::Zero(n);
  } else {
    ns->qr.compute(p.E.transpose());
    ns->rank = ns->qr.rank();
    const Eigen::Index r = ns->rank;
    MatrixXd sel = MatrixXd::Zero(n, n - r);
    sel.bottomRows(n - r).setIdentity();
    ns->Z = ns->qr.householderQ() * sel;
    const VectorXd pf = ns->qr.colsPermutation().transpose() * p.f;
    VectorXd alpha = VectorXd::Zero(n);
    if (r > 0) {
      const MatrixXd R11 = ns->qr.matrixR().topLeftCorner(r, r).triangularView<Eigen::Upper>();
      alpha.head(r) = R11.transpose().triangularView<Eigen::Lower>().solve(pf.head(r));
    }
    ns->x0 = ns->qr.householderQ() * alpha;
    const double res = inf_norm(p.E * ns->x0 - p.f);
    if (res > feas_tol * (1.0 + inf_norm(p.f))) {
      ns->infeasible = true;
      return ns;
    }
  }
  ns->P = ns->Z.transpose() * p.H * ns->Z;
  ns->P = 0.5 * (ns->P + ns->P.transpose());
  ns->q = ns->Z.transpose() * (p.H * ns->x0 + p.c);
  return ns;
}

Reduction reduce(const QpProblem & p, std::shared_ptr<const NullSpace> ns)
{
  Reduction red;
  red.ns = ns;
  if (ns->infeasible) {
    red.infeasible = true;
    return red;
  }
  const Eigen::Index n = p.n();
  const double feas_tol = 1e-9;
  const Eigen::Index m = ns->Z.cols();

  // Constraint rows are typically very sparse; skip zero coefficients in A Z.
  MatrixXd AZ = MatrixXd::Zero(p.A.rows(), m);
  for (Eigen::Index i = 0; i < p.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = p.A(i, j);
      if (a != 0.0) {
        AZ.row(i) += a * ns->Z.row(j);
      }
    }
  }
  const VectorXd Ax0 = p.A * ns->x0;
  const MatrixXd & Zref = ns->Z;
  const VectorXd & x0 = ns->x0;

  std::vector<RowOrigin> origin;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<Eigen::VectorXd> rows;
  auto add_row = [&](const VectorXd & row, double row_scale, double l, double u, RowOrigin o) {
    if (std::isinf(l) && std::isinf(u)) {
      return;
    }
    if (inf_norm(row) <= 1e-12 * std::max(1.0, row_scale)) {
      // Fixed by the equalities: either always satisfied or never.
      if (l > feas_tol * (1.0 + std::abs(l)) || u < -feas_tol * (1.0 + std::abs(u))) {
        red.infeasible = true;
      }
      return;
    }
    rows.push_back(row);
    lo.push_back(l);
    hi.push_back(u);
    origin.push_back(o);
  };

  for (Eigen::Index i = 0; i < p.A.rows(); ++i) {
    add_row(AZ.row(i).transpose(), p.A.row(i).cwiseAbs().maxCoeff(), -kInf, p.b(i) - Ax0(i),
            {false, i});
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    add_row(Zref.row(j).transpose(), 1.0, p.lower(j) - x0(j), p.upper(j) - x0(j), {true, j});
  }

  red.C.resize(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    red.C.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  }
  red.lo = Eigen::Map<VectorXd>(lo.data(), static_cast<Eigen::Index>(lo.size()));
  red.hi = Eigen::Map<VectorXd>(hi.data(), static_cast<Eigen::Index>(hi.size()));
  red.origin = std::move(origin);
  return red;
}

/// Ruiz equilibration of the reduced problem plus cost scaling.
struct Scaling
{
  VectorXd D;   // variable scaling, w = D * w_bar
  VectorXd Er;  // row scaling, rows_bar = Er * rows
  double cost{1.0};
  MatrixXd P;
  VectorXd q;
  MatrixXd C;
  VectorXd lo;
  VectorXd hi;
};

Scaling equilibrate(const Reduction & red)
{
  const Eigen::Index m = red.ns->P.rows();
  const Eigen::Index rows = red.C.rows();
  Scaling s;
  s.D = VectorXd::Ones(m);
  s.Er = VectorXd::Ones(rows);
  s.P = red.ns->P;
  s.C = red.C;
  auto clamp_norm = [](double v) { return v < 1e-4 ? 1.0 : std::min(v, 1e4); };
  for (int it = 0; it < 10; ++it) {
    VectorXd dcol(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      double nrm = s.P.col(j).cwiseAbs().maxCoeff();
      if (rows > 0) {
        nrm = std::max(nrm, s.C.col(j).cwiseAbs().maxCoeff());
      }
      dcol(j) = 1.0 / std::sqrt(clamp_norm(nrm));
    }
    VectorXd drow(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      drow(i) = 1.0 / std::sqrt(clamp_norm(s.C.row(i).cwiseAbs().maxCoeff()));
    }
    s.P = dcol.asDiagonal() * s.P * dcol.asDiagonal();
    s.C = drow.asDiagonal() * s.C * dcol.asDiagonal();
    s.D.array() *= dcol.array();
    s.Er.array() *= drow.array();
  }
  VectorXd qd = s.D.cwiseProduct(red.ns->q);
  double mean_col = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    mean_col += s.P.col(j).cwiseAbs().maxCoeff();
  }
  mean_col = m > 0 ? mean_col / static_cast<double>(m) : 0.0;
  s.cost = 1.0 / clamp_norm(std::max(mean_col, inf_norm(qd)));
  s.P *= s.cost;
  s.q = s.cost * qd;
  s.lo = s.Er.cwiseProduct(red.lo);
  s.hi = s.Er.cwiseProduct(red.hi);
  return s;
}

/// Active side per constraint row: -1 lower, +1 upper, 0 inactive.
using ActiveSet = std::vector<signed char>;

struct Polished
{
  VectorXd w;   // scaled primal
  VectorXd nu;  // scaled row multipliers
};

/// Equality-constrained KKT solves on a working set, repaired by adding violated rows and
/// dropping rows whose multiplier has the wrong sign.
std::optional<Polished> polish(const Scaling & s, ActiveSet active, int max_passes, int * passes)
{
  const Eigen::Index m = s.P.rows();
  const Eigen::Index rows = s.C.rows();
  const double delta = 1e-9;
  for (int pass = 0; pass < max_passes; ++pass) {
    ++*passes;
    std::vector<Eigen::Index> work;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (active[i] != 0) {
        work.push_back(i);
      }
    }
    const Eigen::Index nw = static_cast<Eigen::Index>(work.size());
    MatrixXd K = MatrixXd::Zero(m + nw, m + nw);
    VectorXd rhs(m + nw);
    K.topLeftCorner(m, m) = s.P;
    rhs.head(m) = -s.q;
    for (Eigen::Index k = 0; k < nw; ++k) {
      const Eigen::Index i = work[k];
      K.block(m + k, 0, 1, m) = s.C.row(i);
      K.block(0, m + k, m, 1) = s.C.row(i).transpose();
      rhs(m + k) = active[i] > 0 ? s.hi(i) : s.lo(i);
    }
    MatrixXd Kreg = K;
    Kreg.topLeftCorner(m, m).diagonal().array() += delta;
    Kreg.bottomRightCorner(nw, nw).diagonal().array() -= delta;
    Eigen::PartialPivLU<MatrixXd> lu(Kreg);
    VectorXd sol = lu.solve(rhs);
    for (int refine = 0; refine < 6; ++refine) {
      const VectorXd res = rhs - K * sol;
      if (inf_norm(res) <= 1e-14 * (1.0 + inf_norm(rhs))) {
        break;
      }
      sol += lu.solve(res);
    }
    if (!sol.allFinite()) {
      return std::nullopt;
    }
    const VectorXd w = sol.head(m);
    const VectorXd cw = s.C * w;

    double nu_scale = 1.0;
    for (Eigen::Index k = 0; k < nw; ++k) {
      nu_scale = std::max(nu_scale, std::abs(sol(m + k)));
    }
    const double dual_tol = 1e-10 * nu_scale;

    std::vector<std::pair<double, Eigen::Index>> wrong_sign;
    for (Eigen::Index k = 0; k < nw; ++k) {
      const Eigen::Index i = work[k];
      const double nu = sol(m + k);
      if (s.lo(i) == s.hi(i)) {
        continue;
      }
      if ((active[i] > 0 && nu < -dual_tol) || (active[i] < 0 && nu > dual_tol)) {
        wrong_sign.emplace_back(std::abs(nu), i);
      }
    }
    std::vector<std::pair<double, Eigen::Index>> violated;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (active[i] != 0) {
        continue;
      }
      const double tol_i = 1e-10 * (1.0 + std::abs(cw(i)));
      if (cw(i) > s.hi(i) + tol_i) {
        violated.emplace_back(cw(i) - s.hi(i), i + 1);
      } else if (cw(i) < s.lo(i) - tol_i) {
        violated.emplace_back(s.lo(i) - cw(i), -(i + 1));
      }
    }
    if (wrong_sign.empty() && violated.empty()) {
      Polished out;
      out.w = w;
      out.nu = VectorXd::Zero(rows);
      for (Eigen::Index k = 0; k < nw; ++k) {
        out.nu(work[k]) = sol(m + k);
      }
      return out;
    }
    // Bulk updates converge fastest from a good guess; fall back to single moves so a late
    // cycle between two working sets cannot persist.
    const bool single = pass >= 12;
    auto by_size = [](const auto & a, const auto & b) { return a.first > b.first; };
    std::sort(wrong_sign.begin(), wrong_sign.end(), by_size);
    std::sort(violated.begin(), violated.end(), by_size);
    if (single) {
      if (!violated.empty()) {
        const Eigen::Index code = violated.front().second;
        active[std::abs(code) - 1] = code > 0 ? 1 : -1;
      } else {
        active[wrong_sign.front().second] = 0;
      }
    } else {
      for (const auto & ws : wrong_sign) {
        active[ws.second] = 0;
      }
      for (const auto & v : violated) {
        active[std::abs(v.second) - 1] = v.second > 0 ? 1 : -1;
      }
    }
  }
  return std::nullopt;
}

/// Guess of the active set from splitting iterates (scaled quantities).
ActiveSet guess_active(const Scaling & s, const VectorXd & z, const VectorXd & y)
{
  ActiveSet a(static_cast<std::size_t>(s.C.rows()), 0);
  for (Eigen::Index i = 0; i < s.C.rows(); ++i) {
    if (s.lo(i) == s.hi(i)) {
      a[i] = 1;
    } else if (z(i) - s.lo(i) < -y(i)) {
      a[i] = -1;
    } else if (s.hi(i) - z(i) < y(i)) {
      a[i] = 1;
    }
  }
  return a;
}

/// One-sided constraint codes: 2 i is the upper side of row i, 2 i + 1 the lower side.
struct DualActiveSetResult
{
  enum class Status { kOptimal, kInfeasible, kFailed } status{Status::kFailed};
  VectorXd w;
  VectorXd nu;           // row multipliers, positive on the upper side
  VectorXd certificate;  // row weights of a Farkas combination when infeasible
  int iterations{0};
};

/// Dual active-set method (Goldfarb-Idnani) for a positive definite reduced Hessian. Starting
/// from the unconstrained minimum it adds violated constraints while keeping the multipliers
/// feasible, so it either reaches the optimum or exhibits a nonnegative combination of
/// constraints that cannot hold. Rows named in \p seed are added first, in order, whenever they
/// are violated; any order keeps the method exact.
DualActiveSetResult dual_active_set(
  const Scaling & s, const Eigen::LLT<MatrixXd> & llt, const std::vector<int> & seed, int max_iter)
{
  const Eigen::Index m = s.P.rows();
  const Eigen::Index rows = s.C.rows();
  DualActiveSetResult out;

  // Constraint p in the form a_p' w + b_p >= 0.
  auto normal = [&](int code) -> VectorXd {
    const Eigen::Index i = code / 2;
    return code % 2 == 0 ? VectorXd(-s.C.row(i).transpose()) : VectorXd(s.C.row(i).transpose());
  };
  auto offset = [&](int code) {
    const Eigen::Index i = code / 2;
    return code % 2 == 0 ? s.hi(i) : -s.lo(i);
  };

  // J = L^-T Q with J' N_A = [R; 0].
  const MatrixXd L = llt.matrixL();
  MatrixXd J = L.transpose().triangularView<Eigen::Upper>().solve(MatrixXd::Identity(m, m));
  MatrixXd R = MatrixXd::Zero(m, m);
  std::vector<int> active;
  VectorXd u = VectorXd::Zero(m);  // multipliers of the active set, same order
  VectorXd w = -llt.solve(s.q);

  const double tiny = 1e-14;
  auto add_to_factor = [&](VectorXd d) {
    const Eigen::Index q = static_cast<Eigen::Index>(active.size());
    for (Eigen::Index j = m - 1; j > q; --j) {
      const double h = std::hypot(d(j - 1), d(j));
      if (h <= 0.0) {
        continue;
      }
      const double c = d(j - 1) / h;
      const double sn = d(j) / h;
      d(j - 1) = h;
      d(j) = 0.0;
      const VectorXd cj1 = J.col(j - 1);
      J.col(j - 1) = c * cj1 + sn * J.col(j);
      J.col(j) = -sn * cj1 + c * J.col(j);
    }
    R.col(q).head(q + 1) = d.head(q + 1);
    if (q + 1 < m) {
      R.col(q).tail(m - q - 1).setZero();
    }
    return std::abs(d(q)) > tiny * std::max(1.0, d.head(q + 1).cwiseAbs().maxCoeff());
  };
  auto drop_from_factor = [&](Eigen::Index l) {
    const Eigen::Index q = static_cast<Eigen::Index>(active.size());
    for (Eigen::Index c = l; c + 1 < q; ++c) {
      R.col(c) = R.col(c + 1);
      u(c) = u(c + 1);
    }
    R.col(q - 1).setZero();
    u(q - 1) = 0.0;
    active.erase(active.begin() + l);
    for (Eigen::Index j = l; j + 1 < q; ++j) {
      const double h = std::hypot(R(j, j), R(j + 1, j));
      if (h <= 0.0) {
        continue;
      }
      const double c = R(j, j) / h;
      const double sn = R(j + 1, j) / h;
      for (Eigen::Index col = j; col + 1 < q; ++col) {
        const double a = R(j, col);
        const double b = R(j + 1, col);
        R(j, col) = c * a + sn * b;
        R(j + 1, col) = -sn * a + c * b;
      }
      R(j + 1, j) = 0.0;
      const VectorXd cj = J.col(j);
      J.col(j) = c * cj + sn * J.col(j + 1);
      J.col(j + 1) = -sn * cj + c * J.col(j + 1);
    }
  };

  std::vector<char> in_active(static_cast<std::size_t>(2 * rows), 0);
  std::size_t seed_pos = 0;

  auto slack = [&](int code) { return normal(code).dot(w) + offset(code); };
  auto viol_tol = [&](int code) { return 1e-11 * (1.0 + std::abs(offset(code))); };

  for (int iter = 0; iter < max_iter; ++iter) {
    out.iterations = iter + 1;
    // Choose the constraint to add: violated seeds first, then the worst violation.
    int p = -1;
    while (p < 0 && seed_pos < seed.size()) {
      const int code = seed[seed_pos++];
      const Eigen::Index i = code / 2;
      if (code < 0 || i >= rows || in_active[code] || !std::isfinite(offset(code))) {
        continue;
      }
      if (slack(code) < -viol_tol(code)) {
        p = code;
      }
    }
    if (p < 0) {
      double worst = 0.0;
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double cw = s.C.row(i).dot(w);
        if (std::isfinite(s.hi(i)) && !in_active[2 * i]) {
          const double v = s.hi(i) - cw;
          if (v < -1e-11 * (1.0 + std::abs(s.hi(i))) && v < worst) {
            worst = v;
            p = static_cast<int>(2 * i);
          }
        }
        if (std::isfinite(s.lo(i)) && !in_active[2 * i + 1]) {
          const double v = cw - s.lo(i);
          if (v < -1e-11 * (1.0 + std::abs(s.lo(i))) && v < worst) {
            worst = v;
            p = static_cast<int>(2 * i + 1);
          }
        }
      }
    }
    if (p < 0) {
      out.status = DualActiveSetResult::Status::kOptimal;
      out.w = w;
      out.nu = VectorXd::Zero(rows);
      for (std::size_t k = 0; k < active.size(); ++k) {
        const int code = active[k];
        out.nu(code / 2) += code % 2 == 0 ? u(k) : -u(k);
      }
      return out;
    }

    const VectorXd ap = normal(p);
    double u_plus = 0.0;
    // Inner loop: steps toward satisfying constraint p, dropping blocking constraints.
    for (int inner = 0; inner <= m + 1; ++inner) {
      const Eigen::Index q = static_cast<Eigen::Index>(active.size());
      const VectorXd d = J.transpose() * ap;
      const VectorXd z = J.rightCols(m - q) * d.tail(m - q);
      VectorXd r = VectorXd::Zero(q);
      if (q > 0) {
        r = R.topLeftCorner(q, q).triangularView<Eigen::Upper>().solve(d.head(q));
      }
      const double sp = slack(p);
      // Partial step: largest dual step before an active inequality multiplier hits zero.
      double t1 = kInf;
      Eigen::Index blocking = -1;
      for (Eigen::Index k = 0; k < q; ++k) {
        if (r(k) > 0.0) {
          const double t = u(k) / r(k);
          if (t < t1) {
            t1 = t;
            blocking = k;
          }
        }
      }
      const double za = z.dot(ap);
      const bool has_primal = z.cwiseAbs().maxCoeff() > 1e-13 * std::max(1.0, ap.cwiseAbs().maxCoeff()) &&
                              za > 0.0;
      const double t2 = has_primal ? -sp / za : kInf;
      if (!has_primal && !std::isfinite(t1)) {
        // Farkas combination: a_p - sum r_k a_k = 0 with every r_k <= 0.
        out.status = DualActiveSetResult::Status::kInfeasible;
        out.certificate = VectorXd::Zero(rows);
        out.certificate(p / 2) += p % 2 == 0 ? 1.0 : -1.0;
        for (Eigen::Index k = 0; k < q; ++k) {
          const int code = active[k];
          out.certificate(code / 2) -= r(k) * (code % 2 == 0 ? 1.0 : -1.0);
        }
        return out;
      }
      const double t = std::min(t1, t2);
      if (has_primal) {
        w += t * z;
      }
      if (q > 0) {
        u.head(q) -= t * r;
      }
      u_plus += t;
      if (t == t2) {
        if (!add_to_factor(d)) {
          out.status = DualActiveSetResult::Status::kFailed;
          return out;
        }
        active.push_back(p);
        u(q) = u_plus;
        in_active[p] = 1;
        break;
      }
      // Partial step: drop the blocking constraint and retry p.
      in_active[active[blocking]] = 0;
      drop_from_factor(blocking);
      if (inner == m + 1) {
        out.status = DualActiveSetResult::Status::kFailed;
        return out;
      }
    }
  }
  out.status = DualActiveSetResult::Status::kFailed;
  return out;
}

class Solver
{
public:
  Solver(const QpProblem & p, const QpSettings & settings) : p_(p), settings_(settings) {}

  QpResult run()
  {
    p_.validate();
    std::shared_ptr<const NullSpace> ns;
    SolveCache * cache = settings_.cache;
    if (cache != nullptr && cache->impl && cache->impl->matches(p_)) {
      ns = cache->impl->ns;
    } else {
      check_psd(p_);
      ns = null_space(p_);
      if (cache != nullptr) {
        cache->impl = std::make_shared<SolveCache::Impl>(
          SolveCache::Impl{p_.H, p_.c, p_.E, p_.f, ns});
      }
    }
    const Eigen::Index n = p_.n();
    red_ = reduce(p_, ns);
    if (red_.infeasible) {
      return infeasible_result();
    }
    const Eigen::Index m = red_.ns->Z.cols();
    if (m == 0) {
      return finalize_fixed();
    }
    sc_ = equilibrate(red_);
    const Eigen::Index rows = sc_.C.rows();

    Eigen::LLT<MatrixXd> llt(sc_.P);
    if (llt.info() == Eigen::Success) {
      const VectorXd diag = MatrixXd(llt.matrixL()).diagonal();
      if (diag.minCoeff() > 1e-7 * std::max(1.0, diag.maxCoeff())) {
        dual_llt_ = std::move(llt);
      }
    }

    VectorXd xb = VectorXd::Zero(m);
    VectorXd yb = VectorXd::Zero(rows);
    const WarmStart * ws = settings_.warm_start;
    if (ws != nullptr && ws->x.size() == n && ws->x.allFinite()) {
      xb = sc_.D.cwiseInverse().cwiseProduct(red_.ns->Z.transpose() * (ws->x - red_.ns->x0));
      if (ws->duals) {
        yb = row_duals_from(*ws->duals);
        ActiveSet hinted(static_cast<std::size_t>(rows), 0);
        for (Eigen::Index i = 0; i < rows; ++i) {
          if (yb(i) > 0.0) {
            hinted[i] = 1;
          } else if (yb(i) < 0.0) {
            hinted[i] = -1;
          }
        }
        if (auto res = finish_from(hinted, yb)) {
          return *res;
        }
      }
    }
    return admm(xb, yb);
  }

private:
  const QpProblem & p_;
  QpSettings settings_;
  Reduction red_;
  Scaling sc_;
  std::optional<Eigen::LLT<MatrixXd>> dual_llt_;
  bool dual_tried_{false};
  int polish_passes_{0};

  VectorXd row_duals_from(const QpDuals & d) const
  {
    const Eigen::Index rows = sc_.C.rows();
    VectorXd y = VectorXd::Zero(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const RowOrigin & o = red_.origin[i];
      double v = 0.0;
      if (o.is_bound && d.bound.size() == p_.n()) {
        v = d.bound(o.index);
      } else if (!o.is_bound && d.ineq.size() == p_.A.rows()) {
        v = d.ineq(o.index);
      }
      y(i) = std::isfinite(v) ? sc_.cost * v / sc_.Er(i) : 0.0;
    }
    return y;
  }

  /// Full-space primal and multipliers from scaled reduced quantities.
  QpResult assemble(const VectorXd & wb, const VectorXd & yb) const
  {
    QpResult r;
    r.x = red_.ns->x0 + red_.ns->Z * sc_.D.cwiseProduct(wb);
    r.duals.ineq = VectorXd::Zero(p_.A.rows());
    r.duals.bound = VectorXd::Zero(p_.n());
    for (Eigen::Index i = 0; i < sc_.C.rows(); ++i) {
      const double y = sc_.Er(i) * yb(i) / sc_.cost;
      const RowOrigin & o = red_.origin[i];
      if (o.is_bound) {
        r.duals.bound(o.index) = y;
      } else {
        r.duals.ineq(o.index) = y;
      }
    }
    r.duals.eq = equality_duals(r.x, r.duals);
    r.objective = p_.objective(r.x);
    return r;
  }

  VectorXd equality_duals(const VectorXd & x, const QpDuals & d) const
  {
    const Eigen::Index pe = p_.E.rows();
    VectorXd lambda = VectorXd::Zero(pe);
    if (pe == 0 || red_.ns->rank == 0) {
      return lambda;
    }
    const VectorXd g = p_.H * x + p_.c + p_.A.transpose() * d.ineq + d.bound;
    const Eigen::Index r = red_.ns->rank;
    const VectorXd qtg = red_.ns->qr.householderQ().transpose() * (-g);
    const MatrixXd R11 = red_.ns->qr.matrixR().topLeftCorner(r, r).triangularView<Eigen::Upper>();
    VectorXd mu = VectorXd::Zero(pe);
    mu.head(r) = R11.triangularView<Eigen::Upper>().solve(qtg.head(r));
    lambda = red_.ns->qr.colsPermutation() * mu;
    return lambda;
  }

  bool accept(QpResult & r) const
  {
    const KktReport k = check_kkt(p_, r.x, r.duals);
    r.primal_residual = k.primal;
    r.dual_residual = std::max({k.stationarity, k.dual, k.complementarity});
    if (k.max() <= settings_.tol) {
      r.status = QpStatus::kOptimal;
      return true;
    }
    return false;
  }

  std::optional<QpResult> try_polish(const ActiveSet & guess, int max_passes)
  {
    auto pol = polish(sc_, guess, max_passes, &polish_passes_);
    if (!pol) {
      return std::nullopt;
    }
    QpResult r = assemble(pol->w, pol->nu);
    r.polished = true;
    if (!accept(r)) {
      return std::nullopt;
    }
    r.iterations = polish_passes_;
    return r;
  }

  /// Polish on \p guess; when that set is not exactly optimal and the reduced Hessian is
  /// definite, continue with the dual active-set method seeded by it.
  std::optional<QpResult> finish_from(const ActiveSet & guess, const VectorXd & weight)
  {
    if (auto res = try_polish(guess, dual_llt_ ? 1 : 40)) {
      return res;
    }
    if (!dual_llt_ || dual_tried_) {
      return std::nullopt;
    }
    dual_tried_ = true;
    std::vector<std::pair<double, int>> ranked;
    for (std::size_t i = 0; i < guess.size(); ++i) {
      if (guess[i] != 0) {
        const int code = static_cast<int>(2 * i) + (guess[i] > 0 ? 0 : 1);
        ranked.emplace_back(-std::abs(weight(static_cast<Eigen::Index>(i))), code);
      }
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<int> seed;
    for (const auto & r : ranked) {
      seed.push_back(r.second);
    }
    const int budget = 20 * static_cast<int>(sc_.P.rows() + sc_.C.rows()) + 100;
    const auto das = dual_active_set(sc_, *dual_llt_, seed, budget);
    polish_passes_ += das.iterations;
    using DS = DualActiveSetResult::Status;
    if (das.status == DS::kOptimal) {
      QpResult r = assemble(das.w, das.nu);
      r.polished = true;
      r.iterations = polish_passes_;
      if (accept(r)) {
        return r;
      }
    } else if (das.status == DS::kInfeasible) {
      const double margin = infeasibility_margin(das.certificate);
      if (margin > 1e-9) {
        QpResult r = infeasible_result();
        r.iterations = polish_passes_;
        r.primal_residual = margin;
        return r;
      }
    }
    return std::nullopt;
  }

  QpResult infeasible_result() const
  {
    QpResult r;
    r.status = QpStatus::kInfeasible;
    r.x = VectorXd::Zero(p_.n());
    r.duals.ineq = VectorXd::Zero(p_.A.rows());
    r.duals.eq = VectorXd::Zero(p_.E.rows());
    r.duals.bound = VectorXd::Zero(p_.n());
    return r;
  }

  QpResult finalize_fixed()
  {
    QpResult r;
    r.x = red_.ns->x0;
    r.duals.ineq = VectorXd::Zero(p_.A.rows());
    r.duals.bound = VectorXd::Zero(p_.n());
    const double tol = 1e-9;
    // With no freedom left, the remaining rows hold or the problem is infeasible.
    const VectorXd slack = p_.b - p_.A * r.x;
    for (Eigen::Index i = 0; i < slack.size(); ++i) {
      if (slack(i) < -tol * (1.0 + std::abs(p_.b(i)))) {
        return infeasible_result();
      }
    }
    for (Eigen::Index j = 0; j < p_.n(); ++j) {
      if (r.x(j) < p_.lower(j) - tol * (1.0 + std::abs(p_.lower(j))) ||
          r.x(j) > p_.upper(j) + tol * (1.0 + std::abs(p_.upper(j)))) {
        return infeasible_result();
      }
    }
    r.duals.eq = equality_duals(r.x, r.duals);
    r.objective = p_.objective(r.x);
    if (!accept(r)) {
      r.status = QpStatus::kNumericalFailure;
    }
    return r;
  }

  /// Farkas-type certificate on the dual displacement (unscaled reduced rows).
  /// Infeasibility margin of a candidate Farkas direction (scaled row weights): the normalized
  /// support -sum(h v) when the weighted rows cancel to within \p cancel_tol, else 0.
  double infeasibility_margin(const VectorXd & dy_scaled, double cancel_tol = 1e-8) const
  {
    VectorXd v = sc_.Er.cwiseProduct(dy_scaled);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::isinf(red_.hi(i)) && v(i) > 0.0) {
        v(i) = 0.0;
      }
      if (std::isinf(red_.lo(i)) && v(i) < 0.0) {
        v(i) = 0.0;
      }
    }
    const double vn = inf_norm(v);
    if (vn <= 1e-30) {
      return 0.0;
    }
    if (inf_norm(red_.C.transpose() * v) > cancel_tol * vn) {
      return 0.0;
    }
    double support = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) > 0.0) {
        support += red_.hi(i) * v(i);
      } else if (v(i) < 0.0) {
        support += red_.lo(i) * v(i);
      }
    }
    return -support / vn;
  }

  /// Certificate test on the displacement of the splitting duals.
  bool certifies_infeasible(const VectorXd & dy_scaled) const
  {
    const double eps = settings_.infeasibility_tol;
    return infeasibility_margin(dy_scaled, eps) > eps;
  }

  QpResult admm(VectorXd xb, VectorXd yb)
  {
    const Eigen::Index m = sc_.P.rows();
    const Eigen::Index rows = sc_.C.rows();
    const double sigma = 1e-6;
    const double alpha = 1.6;
    const double loose = 1e-3;
    double rho = 0.1;

    VectorXd rho_vec(rows);
    auto set_rho = [&]() {
      for (Eigen::Index i = 0; i < rows; ++i) {
        rho_vec(i) = sc_.lo(i) == sc_.hi(i) ? 1e3 * rho : rho;
      }
    };
    set_rho();
    Eigen::LLT<MatrixXd> llt;
    auto factor = [&]() {
      MatrixXd Kmat = sc_.P + sigma * MatrixXd::Identity(m, m) +
                      sc_.C.transpose() * rho_vec.asDiagonal() * sc_.C;
      llt.compute(Kmat);
      return llt.info() == Eigen::Success;
    };
    if (!factor()) {
      QpResult r = assemble(xb, yb);
      r.status = QpStatus::kNumericalFailure;
      return r;
    }

    VectorXd zb = (sc_.C * xb).cwiseMax(sc_.lo).cwiseMin(sc_.hi);
    std::optional<ActiveSet> last_attempt;
    const VectorXd Dinv = sc_.D.cwiseInverse();
    const VectorXd Einv = sc_.Er.cwiseInverse();
    const double cinv = 1.0 / sc_.cost;

    int iter = 0;
    for (iter = 1; iter <= settings_.max_iter; ++iter) {
      const VectorXd rhs = sigma * xb - sc_.q + sc_.C.transpose() * (rho_vec.cwiseProduct(zb) - yb);
      const VectorXd xt = llt.solve(rhs);
      const VectorXd zt = sc_.C * xt;
      const VectorXd xn = alpha * xt + (1.0 - alpha) * xb;
      const VectorXd zh = alpha * zt + (1.0 - alpha) * zb;
      const VectorXd zn =
        (zh + yb.cwiseQuotient(rho_vec)).cwiseMax(sc_.lo).cwiseMin(sc_.hi);
      const VectorXd yn = yb + rho_vec.cwiseProduct(zh - zn);
      const VectorXd dy = yn - yb;
      xb = xn;
      zb = zn;
      yb = yn;

      if (!xb.allFinite() || !yb.allFinite()) {
        QpResult r = infeasible_result();
        r.status = QpStatus::kNumericalFailure;
        r.iterations = iter;
        return r;
      }
      if (iter % 10 != 0 && iter != settings_.max_iter) {
        continue;
      }

      const VectorXd cx = sc_.C * xb;
      const VectorXd px = sc_.P * xb;
      const VectorXd cty = sc_.C.transpose() * yb;
      const double r_prim = inf_norm(Einv.cwiseProduct(cx - zb));
      const double r_dual = cinv * inf_norm(Dinv.cwiseProduct(px + sc_.q + cty));
      const double prim_scale =
        std::max(inf_norm(Einv.cwiseProduct(cx)), inf_norm(Einv.cwiseProduct(zb)));
      const double dual_scale = cinv * std::max({inf_norm(Dinv.cwiseProduct(px)),
                                                 inf_norm(Dinv.cwiseProduct(cty)),
                                                 inf_norm(Dinv.cwiseProduct(sc_.q))});
      const bool loose_ok = r_prim <= loose * (1.0 + prim_scale) &&
                            r_dual <= loose * (1.0 + dual_scale);
      const bool tight_ok = r_prim <= settings_.tol * (1.0 + prim_scale) &&
                            r_dual <= settings_.tol * (1.0 + dual_scale);

      if (loose_ok || iter % 50 == 0) {
        ActiveSet guess = guess_active(sc_, zb, yb);
        if (!last_attempt || guess != *last_attempt || (dual_llt_ && !dual_tried_)) {
          last_attempt = guess;
          if (auto res = finish_from(guess, yb)) {
            res->iterations = iter + polish_passes_;
            return *res;
          }
        }
      }
      if (tight_ok) {
        QpResult r = assemble(xb, yb);
        r.iterations = iter + polish_passes_;
        if (accept(r)) {
          return r;
        }
      }
      if (rows > 0 && certifies_infeasible(dy)) {
        QpResult r = infeasible_result();
        r.iterations = iter + polish_passes_;
        r.primal_residual = r_prim;
        r.dual_residual = r_dual;
        return r;
      }

      if (iter % 50 == 0 || iter == 10) {
        const double pn =
          inf_norm(cx - zb) / (std::max(inf_norm(cx), inf_norm(zb)) + 1e-30);
        const double dn = inf_norm(px + sc_.q + cty) /
                          (std::max({inf_norm(px), inf_norm(cty), inf_norm(sc_.q)}) + 1e-30);
        double rho_new = rho * std::sqrt(pn / std::max(dn, 1e-30));
        rho_new = std::clamp(rho_new, 1e-6, 1e6);
        if (rho_new > 5.0 * rho || rho_new < 0.2 * rho) {
          rho = rho_new;
          set_rho();
          if (!factor()) {
            QpResult r = assemble(xb, yb);
            r.status = QpStatus::kNumericalFailure;
            r.iterations = iter;
            return r;
          }
        }
      }
    }

    QpResult r = assemble(xb, yb);
    r.iterations = settings_.max_iter + polish_passes_;
    if (!accept(r)) {
      r.status = QpStatus::kIterationLimit;
    }
    return r;
  }
};

}  // namespace

QpResult solve_qp(const QpProblem & problem, const QpSettings & settings)
{
  return Solver(problem, settings).run();
}

}  // namespace hwplan::qp
