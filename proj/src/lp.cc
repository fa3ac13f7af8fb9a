// Copyright 2026 The posg-occupancy Authors.
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

#include "posg/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace posg {
namespace {

constexpr double kPivotEps = 1e-9;
constexpr int kMaxIterations = 1000000;

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return cells_[r * (cols_ + 1) + c]; }
  // Row `rows_` is the objective row, column `cols_` the right-hand side.
  double& obj(int c) { return at(rows_, c); }
  double& rhs(int r) { return at(r, cols_); }

  void pivot(int pr, int pc) {
    const double p = at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> cells_;
};

// Runs Bland's rule on columns [0, usable). Returns false when unbounded.
bool run_simplex(Tableau& t, std::vector<int>& basis, int usable,
                 int& iterations) {
  const int m = static_cast<int>(basis.size());
  while (true) {
    int enter = -1;
    for (int c = 0; c < usable; ++c) {
      if (t.obj(c) < -kPivotEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < m; ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotEps) continue;
      const double ratio = t.rhs(r) / a;
      if (leave < 0 || ratio < best - 1e-14 ||
          (std::abs(ratio - best) <= 1e-14 && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
    if (++iterations > kMaxIterations) {
      throw std::runtime_error("simplex iteration limit reached");
    }
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.objective.size()) != n) {
    throw std::invalid_argument("objective size differs from num_vars");
  }
  // Column layout: structural | slack or surplus (one per inequality) |
  // artificial (one per >= or = row).
  std::vector<int> slack_col(m, -1);
  std::vector<int> art_col(m, -1);
  std::vector<double> sign(m, 1.0);
  std::vector<RowSense> sense(m);
  int cols = n;
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(lp.rows[r].coeffs.size()) != n) {
      throw std::invalid_argument("constraint row size differs from num_vars");
    }
    sense[r] = lp.rows[r].sense;
    if (lp.rows[r].rhs < 0.0) {
      sign[r] = -1.0;
      if (sense[r] == RowSense::kLessEqual) {
        sense[r] = RowSense::kGreaterEqual;
      } else if (sense[r] == RowSense::kGreaterEqual) {
        sense[r] = RowSense::kLessEqual;
      }
    }
    if (sense[r] != RowSense::kEqual) slack_col[r] = cols++;
  }
  const int first_art = cols;
  for (int r = 0; r < m; ++r) {
    if (sense[r] != RowSense::kLessEqual) art_col[r] = cols++;
  }

  Tableau t(m, cols);
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) t.at(r, c) = sign[r] * lp.rows[r].coeffs[c];
    t.rhs(r) = sign[r] * lp.rows[r].rhs;
    if (sense[r] == RowSense::kLessEqual) {
      t.at(r, slack_col[r]) = 1.0;
      basis[r] = slack_col[r];
    } else {
      if (sense[r] == RowSense::kGreaterEqual) t.at(r, slack_col[r]) = -1.0;
      t.at(r, art_col[r]) = 1.0;
      basis[r] = art_col[r];
    }
  }

  LpResult result;
  // Phase 1: maximize -sum(artificial).
  if (first_art < cols) {
    for (int c = first_art; c < cols; ++c) t.obj(c) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (art_col[r] < 0) continue;
      for (int c = 0; c <= cols; ++c) t.obj(c) -= t.at(r, c);
    }
    const bool bounded = run_simplex(t, basis, cols, result.iterations);
    if (!bounded || t.obj(cols) < -1e-9) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (basis[r] < first_art) continue;
      int best = -1;
      for (int c = 0; c < first_art; ++c) {
        if (std::abs(t.at(r, c)) > kPivotEps &&
            (best < 0 || std::abs(t.at(r, c)) > std::abs(t.at(r, best)))) {
          best = c;
        }
      }
      if (best >= 0) {
        t.pivot(r, best);
        basis[r] = best;
      }
    }
  }

  // Phase 2 objective row over the non-artificial columns.
  for (int c = 0; c <= cols; ++c) t.obj(c) = 0.0;
  for (int c = 0; c < n; ++c) t.obj(c) = -lp.objective[c];
  for (int r = 0; r < m; ++r) {
    const int b = basis[r];
    if (b >= first_art) continue;  // redundant row, artificial stays at 0
    const double f = t.obj(b);
    if (f == 0.0) continue;
    for (int c = 0; c <= cols; ++c) t.obj(c) -= f * t.at(r, c);
  }
  if (!run_simplex(t, basis, first_art, result.iterations)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.objective = t.obj(cols);
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] = t.rhs(r);
  }
  result.dual.assign(m, std::numeric_limits<double>::quiet_NaN());
  for (int r = 0; r < m; ++r) {
    if (slack_col[r] < 0) continue;
    const double y = t.obj(slack_col[r]);
    result.dual[r] = sign[r] * (sense[r] == RowSense::kLessEqual ? y : -y);
  }
  return result;
}

}  // namespace posg
