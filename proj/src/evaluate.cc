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

#include "posg/evaluate.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "posg/rng.hpp"

namespace posg {
namespace {

double action_prob(const PosgModel& model, const JointPolicy& policy, int t,
                   const JointHistory& o, int ja) {
  double p = 1.0;
  for (int j = 0; j < model.n_agents; ++j) {
    p *= policy[j].at(t, o[j])[model.agent_action(ja, j)];
    if (p == 0.0) return 0.0;
  }
  return p;
}

void check_horizon(const PosgModel& model, const JointPolicy& policy) {
  if (static_cast<int>(policy.size()) != model.n_agents) {
    throw std::invalid_argument("joint policy needs one policy per agent");
  }
  for (const auto& p : policy) {
    if (p.horizon() != model.horizon) {
      throw std::invalid_argument("policy horizon differs from model horizon");
    }
  }
}

// r + gamma * E[v_{t+1}] at (x, o) under the policy.
double backup(const PosgModel& model, const JointPolicy& policy, int agent,
              int t, const OccupancyKey& key,
              const std::vector<HistoryCodec>& codecs,
              const ValueTable* next) {
  double v = 0.0;
  for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
    const double pa = action_prob(model, policy, t, key.history, ja);
    if (pa == 0.0) continue;
    double future = 0.0;
    if (next != nullptr) {
      for (const auto& out : joint_dynamics(model, key.state, ja)) {
        const OccupancyKey k{out.next_state,
                             extend(codecs, model, key.history, ja,
                                    out.joint_obs)};
        future += out.probability * next->values.at(k);
      }
    }
    v += pa * (model.R(agent, key.state, ja) + model.discount * future);
  }
  return v;
}

std::vector<ValueTable> evaluate_from_keys(const PosgModel& model,
                                           const JointPolicy& policy,
                                           int agent, int t0,
                                           std::set<OccupancyKey> layer) {
  check_horizon(model, policy);
  const int horizon = model.horizon;
  if (t0 > horizon) throw std::invalid_argument("occupancy beyond horizon");
  const auto codecs = history_codecs(model);
  std::vector<std::set<OccupancyKey>> layers(horizon + 1);
  layers[t0] = std::move(layer);
  for (int t = t0; t < horizon; ++t) {
    for (const auto& key : layers[t]) {
      for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
        if (action_prob(model, policy, t, key.history, ja) == 0.0) continue;
        for (const auto& out : joint_dynamics(model, key.state, ja)) {
          layers[t + 1].insert(
              {out.next_state,
               extend(codecs, model, key.history, ja, out.joint_obs)});
        }
      }
    }
  }
  std::vector<ValueTable> tables(horizon + 1);
  for (int t = 0; t <= horizon; ++t) tables[t] = {agent, t, {}};
  for (const auto& key : layers[horizon]) tables[horizon].values[key] = 0.0;
  for (int t = horizon - 1; t >= t0; --t) {
    for (const auto& key : layers[t]) {
      tables[t].values[key] =
          backup(model, policy, agent, t, key, codecs, &tables[t + 1]);
    }
  }
  return tables;
}

}  // namespace

std::vector<ValueTable> evaluate_history(const PosgModel& model,
                                         const JointPolicy& policy, int agent,
                                         const OccupancyState& from) {
  std::set<OccupancyKey> keys;
  for (const auto& [k, p] : from.entries) keys.insert(k);
  return evaluate_from_keys(model, policy, agent, from.t, std::move(keys));
}

std::vector<ValueTable> evaluate_history(const PosgModel& model,
                                         const JointPolicy& policy,
                                         int agent) {
  std::set<OccupancyKey> keys;
  for (int x = 0; x < model.num_states(); ++x) {
    keys.insert({x, empty_joint_history(model)});
  }
  return evaluate_from_keys(model, policy, agent, 0, std::move(keys));
}

double evaluate_occupancy(const PosgModel& model, const JointPolicy& policy,
                          const OccupancyState& s, int agent) {
  check_horizon(model, policy);
  if (s.t >= model.horizon) return 0.0;
  const JointDecisionRule a = joint_rule_at(policy, s.t);
  double v = expected_reward(model, s, a, agent);
  if (s.t + 1 < model.horizon) {
    double future = 0.0;
    for (const auto& b : step(model, s, a)) {
      future += b.probability * evaluate_occupancy(model, policy, b.next, agent);
    }
    v += model.discount * future;
  }
  return v;
}

double linear_eval(const OccupancyState& s, const ValueTable& table,
                   std::size_t* missing) {
  if (s.t != table.t) {
    throw std::invalid_argument("time-step mismatch: occupancy at t=" +
                                std::to_string(s.t) + ", table at t=" +
                                std::to_string(table.t));
  }
  double v = 0.0;
  std::size_t absent = 0;
  for (const auto& [key, p] : s.entries) {
    auto it = table.values.find(key);
    if (it == table.values.end()) {
      ++absent;
    } else {
      v += p * it->second;
    }
  }
  if (missing != nullptr) *missing = absent;
  return v;
}

double bellman_residual(const PosgModel& model, const JointPolicy& policy,
                        const std::vector<ValueTable>& tables) {
  const auto codecs = history_codecs(model);
  double worst = 0.0;
  for (int t = 0; t + 1 < static_cast<int>(tables.size()); ++t) {
    for (const auto& [key, v] : tables[t].values) {
      const double b = backup(model, policy, tables[t].agent, t, key, codecs,
                              &tables[t + 1]);
      worst = std::max(worst, std::abs(v - b));
    }
  }
  return worst;
}

SimResult simulate(const PosgModel& model, const JointPolicy& policy,
                   std::int64_t episodes, std::uint64_t seed) {
  check_horizon(model, policy);
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  const int n = model.n_agents;
  const auto codecs = history_codecs(model);
  std::vector<double> sum(n, 0.0);
  std::vector<double> sum_sq(n, 0.0);
  std::vector<int> actions(n);
  std::vector<double> weights;
  for (std::int64_t k = 0; k < episodes; ++k) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(k)));
    int x = rng.categorical(model.start);
    JointHistory o = empty_joint_history(model);
    std::vector<double> ret(n, 0.0);
    double discount = 1.0;
    for (int t = 0; t < model.horizon; ++t) {
      for (int j = 0; j < n; ++j) {
        actions[j] = rng.categorical(policy[j].at(t, o[j]));
      }
      const int ja = model.joint_action(actions);
      for (int j = 0; j < n; ++j) ret[j] += discount * model.R(j, x, ja);
      if (t + 1 == model.horizon) break;
      const auto outcomes = joint_dynamics(model, x, ja);
      weights.clear();
      for (const auto& out : outcomes) weights.push_back(out.probability);
      const auto& out = outcomes[rng.categorical(weights)];
      o = extend(codecs, model, o, ja, out.joint_obs);
      x = out.next_state;
      discount *= model.discount;
    }
    for (int j = 0; j < n; ++j) {
      sum[j] += ret[j];
      sum_sq[j] += ret[j] * ret[j];
    }
  }
  SimResult result{episodes, std::vector<double>(n), std::vector<double>(n),
                   seed};
  const double m = static_cast<double>(episodes);
  for (int j = 0; j < n; ++j) {
    result.mean[j] = sum[j] / m;
    if (episodes > 1) {
      const double var =
          std::max(0.0, (sum_sq[j] - m * result.mean[j] * result.mean[j]) /
                            (m - 1.0));
      result.std_error[j] = std::sqrt(var / m);
    }
  }
  return result;
}

}  // namespace posg
