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

#ifndef POSG_LP_HPP_
#define POSG_LP_HPP_

#include <vector>

namespace posg {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpRow {
  std::vector<double> coeffs;
  RowSense sense;
  double rhs;
};

// maximize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  // Shadow price of every inequality row; NaN for equality rows.
  std::vector<double> dual;
  int iterations = 0;
};

// Dense two-phase tableau simplex with Bland's rule, so degenerate
// problems terminate. Meant for the small programs of the game solvers.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace posg

#endif  // POSG_LP_HPP_
