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

#ifndef HWPLAN__QP__QP_PROBLEM_HPP_
#define HWPLAN__QP__QP_PROBLEM_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hwplan::qp
{

/// Raised for malformed problems: inconsistent dimensions, asymmetric or indefinite H,
/// inverted bounds.
class QpInputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// min 1/2 x'Hx + c'x  s.t.  A x <= b,  E x = f,  lower <= x <= upper.
/// Infinite bounds are encoded as +-infinity.
struct QpProblem
{
  Eigen::MatrixXd H;
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd E;
  Eigen::VectorXd f;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  /// Zero-constraint problem with n variables and free bounds.
  static QpProblem unconstrained(int n);

  int n() const { return static_cast<int>(c.size()); }

  double objective(const Eigen::VectorXd & x) const { return 0.5 * x.dot(H * x) + c.dot(x); }

  /// Dimension, symmetry and bound-order checks. Throws QpInputError.
  void validate() const;
};

/// Lagrange multipliers. ineq >= 0 pairs with A x <= b; eq is free; bound is positive where the
/// upper bound is active and negative where the lower bound is active.
struct QpDuals
{
  Eigen::VectorXd ineq;
  Eigen::VectorXd eq;
  Eigen::VectorXd bound;
};

/// Text dump: a header line per block ("H rows cols") followed by row-major values.
std::string format_problem(const QpProblem & problem);
QpProblem parse_problem(const std::string & text);

}  // namespace hwplan::qp

#endif  // HWPLAN__QP__QP_PROBLEM_HPP_
