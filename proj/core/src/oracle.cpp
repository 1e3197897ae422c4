// Copyright 2026 The packcover Authors
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

#include "packcover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "packcover/errors.hpp"

namespace packcover {

DenseMatrix DenseMatrix::from(const CooMatrix& m) {
  DenseMatrix d(m.rows(), m.cols());
  d.data = m.to_dense();
  return d;
}

std::string_view to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::kOptimal:
      return "optimal";
    case OracleStatus::kUnbounded:
      return "unbounded";
    case OracleStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// Dense tableau. Column layout: n structural, m slack, then one artificial
// per row whose right-hand side was negative. The last column is the rhs.
class Tableau {
 public:
  Tableau(const DenseMatrix& a, const std::vector<double>& b)
      : m_(a.rows), n_(a.cols) {
    std::size_t artificials = 0;
    for (const double v : b) artificials += v < 0.0 ? 1 : 0;
    width_ = n_ + m_ + artificials + 1;
    t_.assign((m_ + 1) * width_, 0.0);
    basis_.resize(m_);
    barred_.assign(width_ - 1, 0);
    std::size_t next_art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * a(i, j);
      at(i, n_ + i) = sign;
      at(i, rhs()) = sign * b[i];
      if (b[i] < 0.0) {
        at(i, next_art) = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
  }

  std::size_t artificial_begin() const { return n_ + m_; }
  std::size_t columns() const { return width_ - 1; }
  std::size_t rhs() const { return width_ - 1; }
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  double& obj(std::size_t j) { return at(m_, j); }
  std::size_t basis(std::size_t i) const { return basis_[i]; }
  void bar(std::size_t j) { barred_[j] = 1; }
  std::uint64_t pivots() const { return pivots_; }

  // Objective row d_j = c_j - c_B^T B^-1 A_j; rhs slot holds -c_B^T x_B.
  void load_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= columns(); ++j) {
      double d = j < columns() ? cost[j] : 0.0;
      for (std::size_t i = 0; i < m_; ++i) d -= cost[basis_[i]] * at(i, j);
      obj(j) = d;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double pv = at(row, col);
    for (std::size_t j = 0; j < width_; ++j) at(row, j) /= pv;
    at(row, col) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(row, j);
      at(i, col) = 0.0;
    }
    basis_[row] = col;
    ++pivots_;
  }

  enum class Outcome { kOptimal, kUnbounded };

  // Bland's rule: lowest-index improving column enters; among rows tied on
  // the ratio test, the one whose basic variable has the lowest index leaves.
  Outcome optimize() {
    for (;;) {
      std::size_t enter = columns();
      for (std::size_t j = 0; j < columns(); ++j) {
        if (!barred_[j] && obj(j) > kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == columns()) return Outcome::kOptimal;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double e = at(i, enter);
        if (e <= kPivotTol) continue;
        const double r = at(i, rhs()) / e;
        if (leave == m_) {
          best = r;
          leave = i;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, std::fabs(best));
        if (r < best - tie ||
            (std::fabs(r - best) <= tie && basis_[i] < basis_[leave])) {
          best = std::min(best, r);
          leave = i;
        }
      }
      if (leave == m_) return Outcome::kUnbounded;
      pivot(leave, enter);
    }
  }

  // Pivots basic artificials at zero level out of the basis where possible.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < artificial_begin()) continue;
      for (std::size_t j = 0; j < artificial_begin(); ++j) {
        if (std::fabs(at(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

 private:
  std::size_t m_, n_, width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<std::uint8_t> barred_;
  std::uint64_t pivots_ = 0;
};

}  // namespace

OracleResult solve_dense_lp(const DenseMatrix& a, const std::vector<double>& b,
                            const std::vector<double>& c) {
  if (b.size() != a.rows || c.size() != a.cols) {
    throw PreconditionError("solve_dense_lp: dimension mismatch");
  }
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  Tableau tab(a, b);
  OracleResult result;

  if (tab.columns() > tab.artificial_begin()) {
    std::vector<double> phase1(tab.columns(), 0.0);
    for (std::size_t j = tab.artificial_begin(); j < tab.columns(); ++j) {
      phase1[j] = -1.0;
    }
    tab.load_objective(phase1);
    tab.optimize();
    if (tab.obj(tab.rhs()) > 1e-9) {  // -(phase-one value) = sum artificials
      result.status = OracleStatus::kInfeasible;
      result.pivots = tab.pivots();
      return result;
    }
    tab.expel_artificials();
    for (std::size_t j = tab.artificial_begin(); j < tab.columns(); ++j) {
      tab.bar(j);
    }
  }

  std::vector<double> cost(tab.columns(), 0.0);
  std::copy(c.begin(), c.end(), cost.begin());
  tab.load_objective(cost);
  const auto outcome = tab.optimize();
  result.pivots = tab.pivots();
  if (outcome == Tableau::Outcome::kUnbounded) {
    result.status = OracleStatus::kUnbounded;
    return result;
  }

  result.status = OracleStatus::kOptimal;
  result.primal.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis(i) < n) result.primal[tab.basis(i)] = tab.at(i, tab.rhs());
  }
  result.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    result.dual[i] = std::max(0.0, -tab.obj(n + i));
  }
  for (std::size_t j = 0; j < n; ++j) result.value += c[j] * result.primal[j];
  return result;
}

OracleResult solve_exact(const DenseMatrix& m) {
  if (m.rows > kOracleMaxDim || m.cols > kOracleMaxDim) {
    throw PreconditionError("solve_exact: " + std::to_string(m.rows) + "x" +
                            std::to_string(m.cols) + " exceeds the " +
                            std::to_string(kOracleMaxDim) + "x" +
                            std::to_string(kOracleMaxDim) + " cap");
  }
  for (const double v : m.data) {
    if (!(v >= 0.0)) throw PreconditionError("solve_exact: negative entry");
  }
  return solve_dense_lp(m, std::vector<double>(m.rows, 1.0),
                        std::vector<double>(m.cols, 1.0));
}

OracleResult solve_exact(const CooMatrix& m) {
  if (m.rows() > kOracleMaxDim || m.cols() > kOracleMaxDim) {
    throw PreconditionError("solve_exact: instance exceeds the oracle size cap");
  }
  return solve_exact(DenseMatrix::from(m));
}

namespace {

// Largest feasible value of the last coordinate given the others, or -1
// when the given coordinates already violate a row.
double best_last(const DenseMatrix& m, const double* head) {
  const std::size_t last = m.cols - 1;
  double room = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows; ++i) {
    double residual = 1.0;
    for (std::size_t j = 0; j < last; ++j) residual -= m(i, j) * head[j];
    if (residual < -1e-12) return -1.0;
    if (m(i, last) > 0.0) room = std::min(room, std::max(0.0, residual) / m(i, last));
  }
  return room;
}

}  // namespace

double brute_force_tiny(const DenseMatrix& m) {
  if (m.cols == 0 || m.cols > 3) {
    throw PreconditionError("brute_force_tiny: needs 1 to 3 columns");
  }
  std::vector<double> upper(m.cols, 0.0);
  for (std::size_t j = 0; j < m.cols; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) mx = std::max(mx, m(i, j));
    if (mx <= 0.0) return std::numeric_limits<double>::infinity();
    upper[j] = 1.0 / mx;
  }

  constexpr int kSteps = 1000;
  const std::size_t free_dims = m.cols - 1;
  double head[2] = {0.0, 0.0};
  double best_point[2] = {0.0, 0.0};
  double best = -1.0;

  auto evaluate = [&](const double* point) {
    const double tail = best_last(m, point);
    if (tail < 0.0) return;
    double v = tail;
    for (std::size_t j = 0; j < free_dims; ++j) v += point[j];
    if (v > best) {
      best = v;
      for (std::size_t j = 0; j < free_dims; ++j) best_point[j] = point[j];
    }
  };
  auto search = [&](const double* lo, const double* hi) {
    const int n0 = free_dims >= 1 ? kSteps : 0;
    const int n1 = free_dims >= 2 ? kSteps : 0;
    for (int a = 0; a <= n0; ++a) {
      if (free_dims >= 1) head[0] = lo[0] + (hi[0] - lo[0]) * a / kSteps;
      for (int b = 0; b <= n1; ++b) {
        if (free_dims >= 2) head[1] = lo[1] + (hi[1] - lo[1]) * b / kSteps;
        evaluate(head);
      }
    }
  };

  double lo[2] = {0.0, 0.0};
  double hi[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < free_dims; ++j) hi[j] = upper[j];
  search(lo, hi);
  if (free_dims == 0) return best;

  // One refinement pass over two coarse cells on each side of the best point.
  for (std::size_t j = 0; j < free_dims; ++j) {
    const double cell = upper[j] / kSteps;
    lo[j] = std::max(0.0, best_point[j] - 2.0 * cell);
    hi[j] = std::min(upper[j], best_point[j] + 2.0 * cell);
  }
  search(lo, hi);
  return best;
}

}  // namespace packcover
