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

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "posg/error.hpp"
#include "posg/evaluate.hpp"
#include "posg/fixtures.hpp"
#include "posg/lp.hpp"
#include "posg/occupancy.hpp"
#include "posg/rng.hpp"
#include "posg/solve.hpp"
#include "support.hpp"

using namespace posg;
using posg::testing::fixture;

namespace {

MatrixGame matrix(int rows, int cols, std::vector<double> payoff) {
  return MatrixGame{rows, cols, std::move(payoff)};
}

MatrixGame random_matrix(Rng& rng, int rows, int cols) {
  MatrixGame g{rows, cols, {}};
  for (int k = 0; k < rows * cols; ++k) g.payoff.push_back(rng.uniform() * 4 - 2);
  return g;
}

// Value of agent 0 for every pair of pure trees from the start belief.
MatrixGame brute_normal_form(const PosgModel& m, int agent) {
  const auto rows = enumerate_pure_policies(m, 0, m.horizon);
  const auto cols = enumerate_pure_policies(m, 1, m.horizon);
  MatrixGame g{static_cast<int>(rows.size()), static_cast<int>(cols.size()), {}};
  const auto s0 = initial_occupancy(m);
  for (const auto& r : rows) {
    for (const auto& c : cols) {
      g.payoff.push_back(
          evaluate_occupancy(m, to_joint_policy({r, c}), s0, agent));
    }
  }
  return g;
}

double pure_maxmin(const MatrixGame& g) {
  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < g.rows; ++r) {
    double low = std::numeric_limits<double>::infinity();
    for (int c = 0; c < g.cols; ++c) low = std::min(low, g.at(r, c));
    best = std::max(best, low);
  }
  return best;
}

}  // namespace

TEST_CASE("linear programs") {
  SUBCASE("textbook optimum") {
    LinearProgram lp{2, {1, 1}, {}};
    lp.rows.push_back({{1, 2}, RowSense::kLessEqual, 4});
    lp.rows.push_back({{3, 1}, RowSense::kLessEqual, 6});
    const LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(2.8));
    CHECK(r.x[0] == doctest::Approx(1.6));
    CHECK(r.x[1] == doctest::Approx(1.2));
    // Shadow prices solve the dual: 4 y1 + 6 y2 = 2.8.
    CHECK(4 * r.dual[0] + 6 * r.dual[1] == doctest::Approx(2.8));
  }
  SUBCASE("equality and negative right-hand side") {
    LinearProgram lp{2, {-1, -2}, {}};
    lp.rows.push_back({{1, 1}, RowSense::kEqual, 1});
    lp.rows.push_back({{-1, 0}, RowSense::kLessEqual, -0.25});
    const LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.objective == doctest::Approx(-1.0));
  }
  SUBCASE("infeasible") {
    LinearProgram lp{1, {1}, {}};
    lp.rows.push_back({{1}, RowSense::kGreaterEqual, 2});
    lp.rows.push_back({{1}, RowSense::kLessEqual, 1});
    CHECK(solve_lp(lp).status == LpStatus::kInfeasible);
  }
  SUBCASE("unbounded") {
    LinearProgram lp{2, {1, 0}, {}};
    lp.rows.push_back({{0, 1}, RowSense::kLessEqual, 1});
    CHECK(solve_lp(lp).status == LpStatus::kUnbounded);
  }
}

TEST_CASE("matrix game closed forms") {
  const auto a = matrix_game_value(matrix(2, 2, {1, 0, 0, 0}));
  CHECK(std::abs(a.value) <= 1e-12);
  const auto b = matrix_game_value(matrix(2, 2, {1, 0, 0, 2}));
  CHECK(b.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(b.row[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(b.row[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // Matching pennies.
  const auto c = matrix_game_value(matrix(2, 2, {1, -1, -1, 1}));
  CHECK(std::abs(c.value) <= 1e-12);
  CHECK(c.col[0] == doctest::Approx(0.5));
}

TEST_CASE("matrix game solutions are saddle points") {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const int rows = 1 + rng.below(7);
    const int cols = 1 + rng.below(7);
    const MatrixGame g = random_matrix(rng, rows, cols);
    const auto sol = matrix_game_value(g);
    double lower = std::numeric_limits<double>::infinity();
    for (int c = 0; c < cols; ++c) {
      double v = 0.0;
      for (int r = 0; r < rows; ++r) v += sol.row[r] * g.at(r, c);
      lower = std::min(lower, v);
    }
    double upper = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      double v = 0.0;
      for (int c = 0; c < cols; ++c) v += sol.col[c] * g.at(r, c);
      upper = std::max(upper, v);
    }
    CHECK(lower >= sol.value - 1e-9);
    CHECK(upper <= sol.value + 1e-9);
    CHECK(sol.value >= pure_maxmin(g) - 1e-12);
  }
}

TEST_CASE("2x2 matrix games match the mixed-strategy formula") {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const MatrixGame g = random_matrix(rng, 2, 2);
    const double a = g.at(0, 0), b = g.at(0, 1), c = g.at(1, 0), d = g.at(1, 1);
    const double lo = std::max(std::min(a, b), std::min(c, d));
    const double hi = std::min(std::max(a, c), std::max(b, d));
    const double expect = lo == hi ? lo : (a * d - b * c) / (a + d - b - c);
    CHECK(matrix_game_value(g).value == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("Stackelberg value against a leader grid search") {
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const int cols = 2 + rng.below(3);
    const MatrixGame lead = random_matrix(rng, 2, cols);
    const MatrixGame follow = random_matrix(rng, 2, cols);
    const auto sol = stackelberg_value(lead, follow);
    // Leader commits to (p, 1 - p); follower best-responds, ties to the
    // leader's favour.
    double grid = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= 20000; ++j) {
      const double p = j / 20000.0;
      double fbest = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < cols; ++c) {
        fbest = std::max(fbest, p * follow.at(0, c) + (1 - p) * follow.at(1, c));
      }
      double lbest = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < cols; ++c) {
        const double f = p * follow.at(0, c) + (1 - p) * follow.at(1, c);
        if (f >= fbest - 1e-12) {
          lbest = std::max(lbest, p * lead.at(0, c) + (1 - p) * lead.at(1, c));
        }
      }
      grid = std::max(grid, lbest);
    }
    CHECK(sol.leader_value >= grid - 1e-9);
    CHECK(sol.leader_value <= grid + 1e-3);
    // Commitment never hurts: at least the leader's pure maxmin.
    CHECK(sol.leader_value >= pure_maxmin(lead) - 1e-9);
  }
}

TEST_CASE("one-stage tiger value curves") {
  const PosgModel base = fixture("tiger-one-stage.posg");
  for (int k = 0; k <= 100; ++k) {
    const double b = k / 100.0;
    const PosgModel m = with_start(base, {b, 1.0 - b});
    const double dec = solve_dec(with_criterion(m, Criterion::kCommon), 1).values[0];
    CHECK(std::abs(dec - std::max(1.0, 4 * b - 2)) <= 1e-9);
    const double zs = solve_zero_sum(m, 1).values[0];
    const double expect = b <= 0.5 ? 0.0 : (4 * b - 2) / (4 * b - 1);
    CHECK(std::abs(zs - expect) <= 1e-6);
  }
}

TEST_CASE("normal forms match brute-force policy evaluation") {
  for (const char* name : {"tiger.posg", "st-2x2.posg", "public-tiger.posg"}) {
    const PosgModel m = fixture(name);
    const MasterGame game(m, initial_occupancy(m));
    for (int i = 0; i < 2; ++i) {
      const MatrixGame g = game.normal_form(i);
      const MatrixGame brute = brute_normal_form(m, i);
      REQUIRE(g.rows == brute.rows);
      REQUIRE(g.cols == brute.cols);
      double worst = 0.0;
      for (std::size_t k = 0; k < g.payoff.size(); ++k) {
        worst = std::max(worst, std::abs(g.payoff[k] - brute.payoff[k]));
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("fixture equilibria") {
  SUBCASE("tiger common payoff") {
    const PosgModel m = fixture("tiger.posg");
    const MatrixGame brute = brute_normal_form(m, 0);
    const double best = *std::max_element(brute.payoff.begin(), brute.payoff.end());
    const Equilibrium eq = solve(m, 2);
    CHECK(eq.values[0] == doctest::Approx(best).epsilon(1e-12));
    CHECK(eq.values[0] == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(solve(m, 1).values[0] == doctest::Approx(-2.0).epsilon(1e-12));
  }
  SUBCASE("stackelberg leader beats its maxmin") {
    const PosgModel m = fixture("st-2x2.posg");
    const Equilibrium eq = solve(m, 2);
    const MatrixGame brute = brute_normal_form(m, 0);
    CHECK(eq.values[0] >= matrix_game_value(brute).value - 1e-9);
    const auto sol = stackelberg_value(brute, brute_normal_form(m, 1));
    CHECK(eq.values[0] == doctest::Approx(sol.leader_value).epsilon(1e-9));
  }
  SUBCASE("zero-sum saddle gap") {
    const PosgModel m = fixture("public-tiger.posg");
    const Equilibrium eq = solve(m, 2);
    CHECK(eq.residual <= 1e-9);
    CHECK(eq.values[0] == doctest::Approx(-eq.values[1]));
    CHECK(eq.values[0] ==
          doctest::Approx(matrix_game_value(brute_normal_form(m, 0)).value));
  }
}

TEST_CASE("dec ties go to the lowest strategy pair") {
  // Every joint policy of the single-state reward-1 model is optimal.
  const PosgModel m = fixture("minimal.posg");
  const Equilibrium eq = solve(m, 2);
  CHECK(eq.mixtures[0].size() == 1);
  CHECK(eq.mixtures[0][0].first == 0);
}

TEST_CASE("solver guards") {
  const PosgModel tiger = fixture("tiger.posg");
  SolveOptions tight;
  tight.agent_cap = 10;
  CHECK_THROWS_AS(solve(tiger, 2, tight), CapExceededError);
  CHECK_THROWS_AS(solve_zero_sum(tiger, 2), PosgError);
  const PosgModel general = with_criterion(fixture("st-2x2.posg"),
                                           Criterion::kGeneral);
  CHECK_THROWS_AS(solve(general, 2), PosgError);
}

TEST_CASE("best responses agree with enumeration") {
  const PosgModel m = fixture("tiger.posg");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const JointPolicy others = random_joint_policy(m, m.horizon, rng);
    for (int i = 0; i < 2; ++i) {
      const auto h = best_response_history(m, others, i);
      const auto p = best_response_private(m, others, i);
      CHECK(std::abs(h.value - p.value) <= 1e-9);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& tree : enumerate_pure_policies(m, i, m.horizon)) {
        JointPolicy joint = others;
        joint[i] = to_policy(tree);
        best = std::max(best, evaluate_occupancy(m, joint, initial_occupancy(m), i));
      }
      CHECK(std::abs(h.value - best) <= 1e-9);
      // The returned policy attains the value.
      JointPolicy joint = others;
      joint[i] = h.policy;
      CHECK(std::abs(evaluate_occupancy(m, joint, initial_occupancy(m), i) -
                     h.value) <= 1e-9);
    }
  }
}
