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

#include "hwplan/qp/qp_problem.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace hwplan::qp
{

namespace
{

void require(bool cond, const std::string & msg)
{
  if (!cond) {
    throw QpInputError("qp: " + msg);
  }
}

void write_block(std::ostringstream & os, const char * name, const Eigen::MatrixXd & m)
{
  os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) {
        os << ' ';
      }
      const double v = m(r, c);
      if (std::isinf(v)) {
        os << (v > 0 ? "inf" : "-inf");
      } else {
        os << v;
      }
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_block(std::istringstream & is, const std::string & name)
{
  std::string tag;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  require(static_cast<bool>(is >> tag >> rows >> cols), "dump: truncated header for " + name);
  require(tag == name, "dump: expected block '" + name + "', found '" + tag + "'");
  require(rows >= 0 && cols >= 0, "dump: negative dimensions for " + name);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::string token;
      require(static_cast<bool>(is >> token), "dump: truncated values for " + name);
      if (token == "inf") {
        m(r, c) = std::numeric_limits<double>::infinity();
      } else if (token == "-inf") {
        m(r, c) = -std::numeric_limits<double>::infinity();
      } else {
        std::size_t used = 0;
        try {
          m(r, c) = std::stod(token, &used);
        } catch (const std::exception &) {
          used = 0;
        }
        require(used == token.size(), "dump: non-numeric value '" + token + "' in " + name);
      }
    }
  }
  return m;
}

}  // namespace

QpProblem QpProblem::unconstrained(int n)
{
  const double inf = std::numeric_limits<double>::infinity();
  QpProblem p;
  p.H = Eigen::MatrixXd::Zero(n, n);
  p.c = Eigen::VectorXd::Zero(n);
  p.A.resize(0, n);
  p.b.resize(0);
  p.E.resize(0, n);
  p.f.resize(0);
  p.lower = Eigen::VectorXd::Constant(n, -inf);
  p.upper = Eigen::VectorXd::Constant(n, inf);
  return p;
}

void QpProblem::validate() const
{
  const Eigen::Index dim = c.size();
  require(H.rows() == dim && H.cols() == dim, "H must be n x n");
  require(A.cols() == dim && A.rows() == b.size(), "A/b dimension mismatch");
  require(E.cols() == dim && E.rows() == f.size(), "E/f dimension mismatch");
  require(lower.size() == dim && upper.size() == dim, "bound vectors must have length n");
  require(H.allFinite() && c.allFinite() && A.allFinite() && E.allFinite() && f.allFinite(),
          "non-finite problem data");
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    require(!std::isnan(b(i)) && b(i) != -std::numeric_limits<double>::infinity(),
            "inequality right-hand side must not be NaN or -inf");
  }
  if (dim > 0) {
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    require((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale, "H is not symmetric");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    require(!std::isnan(lower(i)) && !std::isnan(upper(i)), "NaN bound");
    require(lower(i) <= upper(i), "bounds inverted at variable " + std::to_string(i));
  }
}

std::string format_problem(const QpProblem & p)
{
  std::ostringstream os;
  os << std::setprecision(17);
  os << "qp " << p.n() << '\n';
  write_block(os, "H", p.H);
  write_block(os, "c", p.c.transpose());
  write_block(os, "A", p.A);
  write_block(os, "b", p.b.transpose());
  write_block(os, "E", p.E);
  write_block(os, "f", p.f.transpose());
  write_block(os, "lower", p.lower.transpose());
  write_block(os, "upper", p.upper.transpose());
  return os.str();
}

QpProblem parse_problem(const std::string & text)
{
  std::istringstream is(text);
  std::string tag;
  int n = 0;
  require(static_cast<bool>(is >> tag >> n) && tag == "qp" && n >= 0, "dump: missing 'qp n' header");
  QpProblem p;
  p.H = read_block(is, "H");
  p.c = read_block(is, "c").transpose();
  p.A = read_block(is, "A");
  p.b = read_block(is, "b").transpose();
  p.E = read_block(is, "E");
  p.f = read_block(is, "f").transpose();
  p.lower = read_block(is, "lower").transpose();
  p.upper = read_block(is, "upper").transpose();
  require(p.n() == n, "dump: header n disagrees with c");
  p.validate();
  return p;
}

}  // namespace hwplan::qp
