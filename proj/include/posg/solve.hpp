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

#ifndef POSG_SOLVE_HPP_
#define POSG_SOLVE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posg/model.hpp"
#include "posg/occupancy.hpp"
#include "posg/policies.hpp"

namespace posg {

struct BestResponse {
  int agent = 0;
  // Expected value of the best response from the starting occupancy.
  double value = 0.0;
  // Deterministic; defined on every history with positive probability.
  Policy policy;
  // Conditional action values q(o^i, u^i) given each reachable history.
  std::map<HistoryId, std::vector<double>> q;
};

// Two action values closer than this count as tied (lowest action wins).
inline constexpr double kTieTolerance = 1e-9;

// Backward induction over agent i's private histories with the others
// fixed. Starts from `from` when given, otherwise from the start belief.
// Only the others' entries of `others` are read.
BestResponse best_response_history(
    const PosgModel& model, const JointPolicy& others, int agent,
    const std::optional<OccupancyState>& from = std::nullopt);

// Dynamic programming over normalized private occupancy states.
BestResponse best_response_private(
    const PosgModel& model, const JointPolicy& others, int agent,
    const std::optional<OccupancyState>& from = std::nullopt);

// Optimal value of agent s.agent from a private occupancy state.
double private_value(const PosgModel& model, const JointPolicy& others,
                     const PrivateOccupancyState& s);

// Row player maximizes rows x cols payoff a[r * cols + c].
struct MatrixGame {
  int rows = 0;
  int cols = 0;
  std::vector<double> payoff;

  double at(int r, int c) const { return payoff[r * cols + c]; }
};

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row;
  std::vector<double> col;
  int iterations = 0;
};

// Minimax value through two linear programs (one per player).
MatrixGameSolution matrix_game_value(const MatrixGame& game,
                                     double tolerance = 1e-9);

struct StackelbergSolution {
  double leader_value = 0.0;
  double follower_value = 0.0;
  std::vector<double> leader;
  int follower = 0;
  int programs = 0;
};

// Strong Stackelberg equilibrium of a bimatrix game with the row player
// committing: one linear program per follower column, best column wins and
// the lowest index breaks ties.
StackelbergSolution stackelberg_value(const MatrixGame& leader,
                                      const MatrixGame& follower);

struct SolveOptions {
  std::uint64_t agent_cap = 10000;
  std::uint64_t joint_cap = 1000000;
  double tolerance = 1e-9;
};

using StrategyMixture = std::vector<std::pair<std::uint64_t, double>>;

struct Equilibrium {
  Criterion criterion = Criterion::kCommon;
  // Value of every agent at the occupancy the game was solved from.
  std::vector<double> values;
  // Per agent: strategy index -> weight. Strategy k of agent i assigns to
  // its j-th anchor history the pure tree number digit_j(k) in base
  // #trees, first anchor most significant. From the start belief there is
  // one anchor, so k is the pure tree index.
  std::vector<StrategyMixture> mixtures;
  std::string method;
  int iterations = 0;
  double residual = 0.0;
};

// The game induced at an occupancy state: each agent picks a continuation
// pure tree for each of its histories in the support.
class MasterGame {
 public:
  MasterGame(const PosgModel& model, const OccupancyState& s,
             const SolveOptions& options = {});

  int depth() const { return depth_; }
  int t() const { return t_; }
  const std::vector<HistoryId>& anchors(int agent) const {
    return anchors_[agent];
  }
  std::uint64_t num_trees(int agent) const { return trees_[agent]; }
  std::uint64_t num_strategies(int agent) const { return strategies_[agent]; }
  // Tree index chosen at every anchor by a strategy.
  std::vector<std::uint64_t> decode(int agent, std::uint64_t strategy) const;
  // The strategy as a policy from step t on.
  Policy policy(int agent, std::uint64_t strategy) const;

  // Agent i's value of a joint strategy.
  double payoff(int agent, const std::vector<std::uint64_t>& strategy) const;
  // Two-agent normal form of agent i's payoffs. Throws CapExceededError
  // beyond the joint cap.
  MatrixGame normal_form(int agent) const;

  Equilibrium solve(Criterion criterion) const;
  Equilibrium solve_common() const;
  Equilibrium solve_zero_sum() const;
  Equilibrium solve_stackelberg() const;

 private:
  const PosgModel* model_;
  SolveOptions options_;
  int t_;
  int depth_;
  std::vector<std::vector<HistoryId>> anchors_;
  std::vector<std::uint64_t> trees_;
  std::vector<std::uint64_t> strategies_;
  std::uint64_t tuples_ = 1;
  // cont_[i][x * tuples_ + tuple]: value of the joint continuation tree
  // tuple from state x, tuple index with agent 0 most significant.
  std::vector<std::vector<double>> cont_;
  struct Mass {
    int state;
    std::vector<int> anchor;  // anchor position per agent
    double mass;
  };
  std::vector<Mass> masses_;
};

// Value of the game at an arbitrary occupancy state.
Equilibrium solve_at(const PosgModel& model, const OccupancyState& s,
                     Criterion criterion, const SolveOptions& options = {});

// Solvers from the start belief at the given horizon.
Equilibrium solve_dec(const PosgModel& model, int horizon,
                      const SolveOptions& options = {});
Equilibrium solve_zero_sum(const PosgModel& model, int horizon,
                           const SolveOptions& options = {});
Equilibrium solve_stackelberg(const PosgModel& model, int horizon,
                              const SolveOptions& options = {});
// Dispatches on model.criterion; general-sum models are rejected.
Equilibrium solve(const PosgModel& model, int horizon,
                  const SolveOptions& options = {});

}  // namespace posg

#endif  // POSG_SOLVE_HPP_
