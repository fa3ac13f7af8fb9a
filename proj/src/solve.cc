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

#include "posg/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "posg/error.hpp"
#include "posg/lp.hpp"

namespace posg {
namespace {

int pick_action(const std::vector<double>& q) {
  int best = 0;
  for (int u = 1; u < static_cast<int>(q.size()); ++u) {
    if (q[u] > q[best] + kTieTolerance) best = u;
  }
  return best;
}

ActionDist one_hot(int n, int u) {
  ActionDist d(n, 0.0);
  d[u] = 1.0;
  return d;
}

double others_prob(const PosgModel& model, const JointPolicy& others, int t,
                   const JointHistory& o, int ja, int agent) {
  double p = 1.0;
  for (int j = 0; j < model.n_agents; ++j) {
    if (j == agent) continue;
    p *= others[j].at(t, o[j])[model.agent_action(ja, j)];
    if (p == 0.0) return 0.0;
  }
  return p;
}

Policy empty_policy(int agent, int horizon) {
  Policy p{agent, {}};
  for (int t = 0; t < horizon; ++t) p.rules.push_back({agent, t, {}});
  return p;
}

}  // namespace

BestResponse best_response_history(const PosgModel& model,
                                   const JointPolicy& others, int agent,
                                   const std::optional<OccupancyState>& from) {
  const OccupancyState s = from ? *from : initial_occupancy(model);
  const int horizon = model.horizon;
  const int t0 = s.t;
  const int nu = model.num_actions(agent);
  const int nz = model.num_agent_obs(agent);
  const auto codecs = history_codecs(model);
  BestResponse br{agent, 0.0, empty_policy(agent, horizon), {}};
  if (t0 >= horizon) return br;

  // Unnormalized masses of (x, o) with agent i's actions left unweighted.
  std::vector<OccupancyMap> layers(horizon);
  layers[t0] = s.entries;
  for (int t = t0; t + 1 < horizon; ++t) {
    for (const auto& [key, m] : layers[t]) {
      for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
        const double pa = others_prob(model, others, t, key.history, ja, agent);
        if (pa == 0.0) continue;
        for (const auto& out : joint_dynamics(model, key.state, ja)) {
          layers[t + 1][{out.next_state,
                         extend(codecs, model, key.history, ja,
                                out.joint_obs)}] += m * pa * out.probability;
        }
      }
    }
  }

  std::map<HistoryId, double> next_value;
  for (int t = horizon - 1; t >= t0; --t) {
    std::map<HistoryId, double> mass;
    std::map<HistoryId, std::vector<double>> reward;
    for (const auto& [key, m] : layers[t]) {
      const HistoryId h = key.history[agent];
      mass[h] += m;
      auto& r = reward.try_emplace(h, nu, 0.0).first->second;
      for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
        const double pa = others_prob(model, others, t, key.history, ja, agent);
        if (pa == 0.0) continue;
        r[model.agent_action(ja, agent)] += m * pa * model.R(agent, key.state, ja);
      }
    }
    std::map<HistoryId, double> value;
    for (const auto& [h, m] : mass) {
      std::vector<double> q(nu);
      std::vector<double> raw(nu);
      for (int u = 0; u < nu; ++u) {
        double future = 0.0;
        if (t + 1 < horizon) {
          for (int z = 0; z < nz; ++z) {
            auto it = next_value.find(codecs[agent].child(h, u, z));
            if (it != next_value.end()) future += it->second;
          }
        }
        raw[u] = reward[h][u] + model.discount * future;
        q[u] = raw[u] / m;
      }
      const int best = pick_action(q);
      value[h] = raw[best];
      br.policy.rules[t].choices[h] = one_hot(nu, best);
      br.q[h] = std::move(q);
    }
    next_value = std::move(value);
  }
  for (const auto& [h, v] : next_value) br.value += v;
  return br;
}

namespace {

class PrivateSolver {
 public:
  PrivateSolver(const PosgModel& model, const JointPolicy& others, int agent,
                BestResponse* out)
      : model_(model), others_(others), agent_(agent), out_(out) {}

  double value(const PrivateOccupancyState& s) {
    if (s.t >= model_.horizon) return 0.0;
    const JointDecisionRule rule = others_rule_at(others_, agent_, s.t);
    const int nu = model_.num_actions(agent_);
    std::vector<double> q(nu);
    for (int u = 0; u < nu; ++u) {
      q[u] = private_reward(model_, s, rule, u);
      if (s.t + 1 < model_.horizon) {
        const auto omega = private_obs_probabilities(model_, s, rule, u);
        double future = 0.0;
        for (int z = 0; z < static_cast<int>(omega.size()); ++z) {
          if (omega[z] <= 0.0) continue;
          const auto next = private_step(model_, s, rule, u, z);
          future += next.probability * value(next.next);
        }
        q[u] += model_.discount * future;
      }
    }
    const int best = pick_action(q);
    if (out_ != nullptr) {
      out_->policy.rules[s.t].choices[s.anchor] = one_hot(nu, best);
      out_->q[s.anchor] = q;
    }
    return q[best];
  }

 private:
  const PosgModel& model_;
  const JointPolicy& others_;
  int agent_;
  BestResponse* out_;
};

}  // namespace

BestResponse best_response_private(const PosgModel& model,
                                   const JointPolicy& others, int agent,
                                   const std::optional<OccupancyState>& from) {
  const OccupancyState s = from ? *from : initial_occupancy(model);
  BestResponse br{agent, 0.0, empty_policy(agent, model.horizon), {}};
  PrivateSolver solver(model, others, agent, &br);
  const auto f = factorize(s, agent);
  for (const auto& [h, weight] : f.marginal.weights) {
    const PrivateOccupancyState sigma{agent, s.t, h,
                                      f.conditional.slices.at(h)};
    br.value += weight * solver.value(sigma);
  }
  return br;
}

double private_value(const PosgModel& model, const JointPolicy& others,
                     const PrivateOccupancyState& s) {
  PrivateSolver solver(model, others, s.agent, nullptr);
  return solver.value(s);
}

MatrixGameSolution matrix_game_value(const MatrixGame& game,
                                     double tolerance) {
  if (game.rows < 1 || game.cols < 1) {
    throw std::invalid_argument("matrix game must be nonempty");
  }
  const int nr = game.rows;
  const int nc = game.cols;
  const double lo = *std::min_element(game.payoff.begin(), game.payoff.end());
  const double shift = 1.0 - lo;  // shifted payoffs are >= 1

  // Column player: max sum_c q_c s.t. sum_c a'(r, c) q_c <= 1 for every r.
  // The value of the shifted game is 1 / sum q, y = q / sum q, and the row
  // mixture comes from the shadow prices. Only <= rows, so no phase 1.
  LinearProgram lp{nc, std::vector<double>(nc, 1.0), {}};
  for (int r = 0; r < nr; ++r) {
    LpRow row{std::vector<double>(nc, 0.0), RowSense::kLessEqual, 1.0};
    for (int c = 0; c < nc; ++c) row.coeffs[c] = game.at(r, c) + shift;
    lp.rows.push_back(std::move(row));
  }
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal || res.objective <= 0.0) {
    throw std::logic_error("matrix game program did not reach optimality");
  }
  MatrixGameSolution sol;
  double px = 0.0;
  for (int r = 0; r < nr; ++r) px += std::max(0.0, res.dual[r]);
  sol.row.resize(nr);
  for (int r = 0; r < nr; ++r) sol.row[r] = std::max(0.0, res.dual[r]) / px;
  sol.col.resize(nc);
  for (int c = 0; c < nc; ++c) sol.col[c] = res.x[c] / res.objective;
  double v_row = std::numeric_limits<double>::infinity();
  for (int c = 0; c < nc; ++c) {
    double v = 0.0;
    for (int r = 0; r < nr; ++r) v += sol.row[r] * game.at(r, c);
    v_row = std::min(v_row, v);
  }
  double v_col = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < nr; ++r) {
    double v = 0.0;
    for (int c = 0; c < nc; ++c) v += sol.col[c] * game.at(r, c);
    v_col = std::max(v_col, v);
  }
  if (std::abs(v_row - v_col) > std::max(tolerance, 1e-7)) {
    throw std::logic_error("matrix game primal and dual values disagree");
  }
  sol.value = 1.0 / res.objective - shift;
  sol.iterations = res.iterations;
  return sol;
}

StackelbergSolution stackelberg_value(const MatrixGame& leader,
                                      const MatrixGame& follower) {
  if (leader.rows != follower.rows || leader.cols != follower.cols ||
      leader.rows < 1 || leader.cols < 1) {
    throw std::invalid_argument("bimatrix shapes differ or are empty");
  }
  const int nr = leader.rows;
  const int nc = leader.cols;
  StackelbergSolution best;
  bool found = false;
  for (int k = 0; k < nc; ++k) {
    LinearProgram lp{nr, std::vector<double>(nr), {}};
    for (int r = 0; r < nr; ++r) lp.objective[r] = leader.at(r, k);
    for (int c = 0; c < nc; ++c) {
      if (c == k) continue;
      LpRow row{std::vector<double>(nr), RowSense::kGreaterEqual, 0.0};
      for (int r = 0; r < nr; ++r) {
        row.coeffs[r] = follower.at(r, k) - follower.at(r, c);
      }
      lp.rows.push_back(std::move(row));
    }
    lp.rows.push_back({std::vector<double>(nr, 1.0), RowSense::kEqual, 1.0});
    const LpResult res = solve_lp(lp);
    ++best.programs;
    if (res.status != LpStatus::kOptimal) continue;
    if (!found || res.objective > best.leader_value + 1e-12) {
      found = true;
      best.leader_value = res.objective;
      best.leader = res.x;
      best.follower = k;
    }
  }
  if (!found) {
    throw std::logic_error("no follower column is a best response");
  }
  best.follower_value = 0.0;
  for (int r = 0; r < nr; ++r) {
    best.follower_value += best.leader[r] * follower.at(r, best.follower);
  }
  return best;
}

// ---------------------------------------------------------------------------
// MasterGame

namespace {

// Pure trees of one agent at every depth up to d, with root actions and
// child subtree indices.
struct TreeFamily {
  std::vector<std::uint64_t> count;               // per depth
  std::vector<std::vector<int>> root;             // [depth][tree]
  std::vector<std::vector<std::uint64_t>> child;  // [depth][tree * Z + z]
};

TreeFamily build_family(const PosgModel& model, int agent, int depth,
                        std::uint64_t cap) {
  const int nu = model.num_actions(agent);
  const int nz = model.num_agent_obs(agent);
  TreeFamily f;
  f.count.assign(depth + 1, 1);
  f.root.resize(depth + 1);
  f.child.resize(depth + 1);
  for (int d = 1; d <= depth; ++d) {
    const std::uint64_t count = pure_policy_count(nu, nz, d);
    if (count > cap) {
      throw CapExceededError("pure policies of agent " +
                                 std::to_string(agent + 1) + " at depth " +
                                 std::to_string(d),
                             count, cap);
    }
    f.count[d] = count;
    f.root[d].resize(count);
    f.child[d].resize(d > 1 ? count * nz : 0);
    for (std::uint64_t k = 0; k < count; ++k) {
      const PolicyTree tree = pure_tree_at(agent, d, nu, nz, k);
      f.root[d][k] = tree.action_at(0);
      if (d > 1) {
        for (int z = 0; z < nz; ++z) {
          f.child[d][k * nz + z] = pure_tree_index(tree.subtree(z));
        }
      }
    }
  }
  return f;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

}  // namespace

MasterGame::MasterGame(const PosgModel& model, const OccupancyState& s,
                       const SolveOptions& options)
    : model_(&model), options_(options), t_(s.t),
      depth_(std::max(0, model.horizon - s.t)) {
  const int n = model.n_agents;
  if (s.entries.empty()) throw std::invalid_argument("empty occupancy state");
  anchors_.resize(n);
  for (int i = 0; i < n; ++i) {
    std::set<HistoryId> seen;
    for (const auto& [key, p] : s.entries) seen.insert(key.history[i]);
    anchors_[i].assign(seen.begin(), seen.end());
  }
  std::map<std::pair<int, std::vector<int>>, double> grouped;
  for (const auto& [key, p] : s.entries) {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) {
      pos[i] = static_cast<int>(
          std::lower_bound(anchors_[i].begin(), anchors_[i].end(),
                           key.history[i]) -
          anchors_[i].begin());
    }
    grouped[{key.state, pos}] += p;
  }
  for (const auto& [k, p] : grouped) masses_.push_back({k.first, k.second, p});

  std::vector<TreeFamily> families;
  for (int i = 0; i < n; ++i) {
    families.push_back(build_family(model, i, depth_, options_.agent_cap));
    trees_.push_back(families[i].count[depth_]);
    const std::uint64_t count = saturating_pow(trees_[i], anchors_[i].size());
    if (count > options_.agent_cap) {
      throw CapExceededError("strategies of agent " + std::to_string(i + 1),
                             count, options_.agent_cap);
    }
    strategies_.push_back(count);
  }

  // Continuation values, depth by depth.
  const int nx = model.num_states();
  std::vector<std::uint64_t> prev_dims(n, 1);
  std::uint64_t prev_tuples = 1;
  std::vector<std::vector<double>> prev(n, std::vector<double>(nx, 0.0));
  std::vector<std::vector<Outcome>> dynamics(
      static_cast<std::size_t>(nx) * model.num_joint_actions());
  for (int x = 0; x < nx; ++x) {
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      dynamics[static_cast<std::size_t>(x) * model.num_joint_actions() + ja] =
          joint_dynamics(model, x, ja);
    }
  }
  for (int d = 1; d <= depth_; ++d) {
    std::vector<std::uint64_t> dims(n);
    std::uint64_t tuples = 1;
    for (int i = 0; i < n; ++i) {
      dims[i] = families[i].count[d];
      tuples = tuples > std::numeric_limits<std::uint64_t>::max() / dims[i]
                   ? std::numeric_limits<std::uint64_t>::max()
                   : tuples * dims[i];
    }
    if (tuples > options_.joint_cap) {
      throw CapExceededError("joint continuation trees", tuples,
                             options_.joint_cap);
    }
    std::vector<std::vector<double>> cur(
        n, std::vector<double>(static_cast<std::size_t>(nx) * tuples, 0.0));
    std::vector<std::uint64_t> tree(n);
    std::vector<int> actions(n);
    for (std::uint64_t tup = 0; tup < tuples; ++tup) {
      std::uint64_t rest = tup;
      for (int i = n - 1; i >= 0; --i) {
        tree[i] = rest % dims[i];
        rest /= dims[i];
        actions[i] = families[i].root[d][tree[i]];
      }
      const int ja = model.joint_action(actions);
      for (int x = 0; x < nx; ++x) {
        const auto& outs =
            dynamics[static_cast<std::size_t>(x) * model.num_joint_actions() +
                     ja];
        for (int i = 0; i < n; ++i) {
          double v = model.R(i, x, ja);
          if (d > 1) {
            double future = 0.0;
            for (const auto& out : outs) {
              std::uint64_t child = 0;
              for (int j = 0; j < n; ++j) {
                const int nz = model.num_agent_obs(j);
                child = child * prev_dims[j] +
                        families[j].child[d][tree[j] * nz +
                                             model.agent_obs(out.joint_obs, j)];
              }
              future += out.probability *
                        prev[i][static_cast<std::size_t>(out.next_state) *
                                    prev_tuples +
                                child];
            }
            v += model.discount * future;
          }
          cur[i][static_cast<std::size_t>(x) * tuples + tup] = v;
        }
      }
    }
    prev = std::move(cur);
    prev_dims = dims;
    prev_tuples = tuples;
  }
  cont_ = std::move(prev);
  tuples_ = prev_tuples;
}

std::vector<std::uint64_t> MasterGame::decode(int agent,
                                              std::uint64_t strategy) const {
  const std::size_t k = anchors_[agent].size();
  std::vector<std::uint64_t> out(k);
  for (std::size_t j = k; j > 0; --j) {
    out[j - 1] = strategy % trees_[agent];
    strategy /= trees_[agent];
  }
  return out;
}

Policy MasterGame::policy(int agent, std::uint64_t strategy) const {
  const auto picks = decode(agent, strategy);
  std::vector<PolicyTree> trees;
  const int nu = model_->num_actions(agent);
  const int nz = model_->num_agent_obs(agent);
  if (depth_ == 0) return anchored_policy(agent, model_->horizon, t_, {}, {});
  for (auto p : picks) trees.push_back(pure_tree_at(agent, depth_, nu, nz, p));
  return anchored_policy(agent, model_->horizon, t_, anchors_[agent], trees);
}

double MasterGame::payoff(int agent,
                          const std::vector<std::uint64_t>& strategy) const {
  const int n = model_->n_agents;
  std::vector<std::vector<std::uint64_t>> picks(n);
  for (int i = 0; i < n; ++i) picks[i] = decode(i, strategy[i]);
  double v = 0.0;
  for (const auto& m : masses_) {
    std::uint64_t tup = 0;
    for (int i = 0; i < n; ++i) {
      tup = tup * trees_[i] + (depth_ == 0 ? 0 : picks[i][m.anchor[i]]);
    }
    v += m.mass * cont_[agent][static_cast<std::size_t>(m.state) * tuples_ +
                               tup];
  }
  return v;
}

MatrixGame MasterGame::normal_form(int agent) const {
  if (model_->n_agents != 2) {
    throw std::invalid_argument("normal form needs exactly two agents");
  }
  const std::uint64_t rows = strategies_[0];
  const std::uint64_t cols = strategies_[1];
  if (rows > options_.joint_cap / cols) {
    throw CapExceededError("joint strategies", rows * cols, options_.joint_cap);
  }
  const std::uint64_t p1 = trees_[0];
  const std::uint64_t p2 = trees_[1];
  const std::size_t na = anchors_[0].size();
  const std::size_t nb = anchors_[1].size();
  // block[(a * nb + b) * p1 * p2 + p * p2 + q]: mass-weighted value of trees
  // (p, q) at anchors (a, b).
  std::vector<double> block(na * nb * p1 * p2, 0.0);
  for (const auto& m : masses_) {
    const std::size_t base = (m.anchor[0] * nb + m.anchor[1]) * p1 * p2;
    for (std::uint64_t pq = 0; pq < p1 * p2; ++pq) {
      block[base + pq] +=
          m.mass *
          cont_[agent][static_cast<std::size_t>(m.state) * tuples_ + pq];
    }
  }
  MatrixGame game{static_cast<int>(rows), static_cast<int>(cols),
                  std::vector<double>(rows * cols, 0.0)};
  std::vector<std::vector<std::uint64_t>> col_picks(cols);
  for (std::uint64_t c = 0; c < cols; ++c) col_picks[c] = decode(1, c);
  for (std::uint64_t r = 0; r < rows; ++r) {
    const auto rp = decode(0, r);
    for (std::uint64_t c = 0; c < cols; ++c) {
      const auto& cp = col_picks[c];
      double v = 0.0;
      for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
          v += block[(a * nb + b) * p1 * p2 + rp[a] * p2 + cp[b]];
        }
      }
      game.payoff[r * cols + c] = v;
    }
  }
  return game;
}

Equilibrium MasterGame::solve_common() const {
  const int n = model_->n_agents;
  Equilibrium eq;
  eq.criterion = Criterion::kCommon;
  eq.method = "enumeration";
  std::vector<std::uint64_t> best;
  double best_value = -std::numeric_limits<double>::infinity();
  if (n == 2) {
    const MatrixGame game = normal_form(0);
    for (int r = 0; r < game.rows; ++r) {
      for (int c = 0; c < game.cols; ++c) {
        ++eq.iterations;
        if (game.at(r, c) > best_value + 1e-12) {
          best_value = game.at(r, c);
          best = {static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c)};
        }
      }
    }
  } else {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      if (total > options_.joint_cap / strategies_[i]) {
        throw CapExceededError("joint strategies", total * strategies_[i],
                               options_.joint_cap);
      }
      total *= strategies_[i];
    }
    std::vector<std::uint64_t> cur(n);
    for (std::uint64_t k = 0; k < total; ++k) {
      std::uint64_t rest = k;
      for (int i = n - 1; i >= 0; --i) {
        cur[i] = rest % strategies_[i];
        rest /= strategies_[i];
      }
      const double v = payoff(0, cur);
      ++eq.iterations;
      if (v > best_value + 1e-12) {
        best_value = v;
        best = cur;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    eq.values.push_back(payoff(i, best));
    eq.mixtures.push_back({{best[i], 1.0}});
  }
  return eq;
}

namespace {

StrategyMixture to_mixture(const std::vector<double>& weights) {
  StrategyMixture out;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 1e-12) out.emplace_back(k, weights[k]);
  }
  return out;
}

}  // namespace

Equilibrium MasterGame::solve_zero_sum() const {
  const MatrixGame game = normal_form(0);
  const MatrixGameSolution sol = matrix_game_value(game, options_.tolerance);
  Equilibrium eq;
  eq.criterion = Criterion::kZeroSum;
  eq.method = "lp-simplex";
  eq.values = {sol.value, -sol.value};
  eq.mixtures = {to_mixture(sol.row), to_mixture(sol.col)};
  eq.iterations = sol.iterations;
  // Saddle gap of the returned mixtures.
  double lower = std::numeric_limits<double>::infinity();
  for (int c = 0; c < game.cols; ++c) {
    double v = 0.0;
    for (int r = 0; r < game.rows; ++r) v += sol.row[r] * game.at(r, c);
    lower = std::min(lower, v);
  }
  double upper = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < game.rows; ++r) {
    double v = 0.0;
    for (int c = 0; c < game.cols; ++c) v += sol.col[c] * game.at(r, c);
    upper = std::max(upper, v);
  }
  eq.residual = upper - lower;
  return eq;
}

Equilibrium MasterGame::solve_stackelberg() const {
  const MatrixGame leader = normal_form(0);
  const MatrixGame follower = normal_form(1);
  const StackelbergSolution sol = stackelberg_value(leader, follower);
  Equilibrium eq;
  eq.criterion = Criterion::kStackelberg;
  eq.method = "multiple-lp";
  eq.values = {sol.leader_value, sol.follower_value};
  eq.mixtures = {to_mixture(sol.leader),
                 {{static_cast<std::uint64_t>(sol.follower), 1.0}}};
  eq.iterations = sol.programs;
  return eq;
}

Equilibrium MasterGame::solve(Criterion criterion) const {
  switch (criterion) {
    case Criterion::kCommon:
      return solve_common();
    case Criterion::kZeroSum:
      return solve_zero_sum();
    case Criterion::kStackelberg:
      return solve_stackelberg();
    case Criterion::kGeneral:
      break;
  }
  throw PosgError("general-sum games have no solver");
}

Equilibrium solve_at(const PosgModel& model, const OccupancyState& s,
                     Criterion criterion, const SolveOptions& options) {
  if (criterion == Criterion::kCommon && !has_common_rewards(model)) {
    throw PosgError("criterion mismatch: rewards are not common");
  }
  if (criterion == Criterion::kZeroSum && !has_zero_sum_rewards(model)) {
    throw PosgError("criterion mismatch: rewards are not zero-sum");
  }
  if (criterion == Criterion::kStackelberg && model.n_agents != 2) {
    throw PosgError("criterion mismatch: stackelberg needs two agents");
  }
  return MasterGame(model, s, options).solve(criterion);
}

Equilibrium solve_dec(const PosgModel& model, int horizon,
                      const SolveOptions& options) {
  const PosgModel m = with_horizon(model, horizon);
  return solve_at(m, initial_occupancy(m), Criterion::kCommon, options);
}

Equilibrium solve_zero_sum(const PosgModel& model, int horizon,
                           const SolveOptions& options) {
  const PosgModel m = with_horizon(model, horizon);
  return solve_at(m, initial_occupancy(m), Criterion::kZeroSum, options);
}

Equilibrium solve_stackelberg(const PosgModel& model, int horizon,
                              const SolveOptions& options) {
  const PosgModel m = with_horizon(model, horizon);
  return solve_at(m, initial_occupancy(m), Criterion::kStackelberg, options);
}

Equilibrium solve(const PosgModel& model, int horizon,
                  const SolveOptions& options) {
  const PosgModel m = with_horizon(model, horizon);
  return solve_at(m, initial_occupancy(m), model.criterion, options);
}

}  // namespace posg
