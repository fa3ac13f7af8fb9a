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

#include "posg/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "posg/error.hpp"

namespace posg {

std::string_view criterion_name(Criterion criterion) {
  switch (criterion) {
    case Criterion::kZeroSum:
      return "zerosum";
    case Criterion::kCommon:
      return "common";
    case Criterion::kStackelberg:
      return "stackelberg";
    case Criterion::kGeneral:
      return "general";
  }
  return "general";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "zerosum" || name == "zs") return Criterion::kZeroSum;
  if (name == "common" || name == "dec") return Criterion::kCommon;
  if (name == "stackelberg" || name == "st") return Criterion::kStackelberg;
  if (name == "general") return Criterion::kGeneral;
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

int PosgModel::joint_action(std::span<const int> per_agent) const {
  if (static_cast<int>(per_agent.size()) != n_agents) {
    throw std::invalid_argument("joint action needs one action per agent");
  }
  int ja = 0;
  for (int i = 0; i < n_agents; ++i) {
    if (per_agent[i] < 0 || per_agent[i] >= num_actions(i)) {
      throw std::out_of_range("action index out of range");
    }
    ja = ja * num_actions(i) + per_agent[i];
  }
  return ja;
}

std::vector<int> PosgModel::split_joint_action(int ja) const {
  std::vector<int> out(n_agents);
  for (int i = 0; i < n_agents; ++i) out[i] = agent_action(ja, i);
  return out;
}

int PosgModel::joint_obs(int w, std::span<const int> private_per_agent) const {
  if (static_cast<int>(private_per_agent.size()) != n_agents) {
    throw std::invalid_argument("joint observation needs one entry per agent");
  }
  if (w < 0 || w >= num_public_obs()) {
    throw std::out_of_range("public observation index out of range");
  }
  int jo = w;
  for (int i = 0; i < n_agents; ++i) {
    if (private_per_agent[i] < 0 ||
        private_per_agent[i] >= num_private_obs(i)) {
      throw std::out_of_range("private observation index out of range");
    }
    jo = jo * num_private_obs(i) + private_per_agent[i];
  }
  return jo;
}

std::string PosgModel::agent_obs_label(int agent, int z) const {
  const int w = z / num_private_obs(agent);
  const int p = z % num_private_obs(agent);
  if (num_public_obs() == 1) return private_obs[agent][p];
  return public_obs[w] + "/" + private_obs[agent][p];
}

double PosgModel::reward_bound() const {
  double c = 0.0;
  for (const auto& table : rewards) {
    for (double r : table) c = std::max(c, std::abs(r));
  }
  return c;
}

void PosgModel::rebuild_index() {
  num_joint_actions_ = 1;
  for (int i = 0; i < n_agents; ++i) num_joint_actions_ *= num_actions(i);
  num_joint_obs_ = num_public_obs();
  for (int i = 0; i < n_agents; ++i) num_joint_obs_ *= num_private_obs(i);

  action_of_.assign(static_cast<std::size_t>(num_joint_actions_) * n_agents,
                    0);
  for (int ja = 0; ja < num_joint_actions_; ++ja) {
    int rest = ja;
    for (int i = n_agents - 1; i >= 0; --i) {
      action_of_[static_cast<std::size_t>(ja) * n_agents + i] =
          rest % num_actions(i);
      rest /= num_actions(i);
    }
  }
  public_of_.assign(num_joint_obs_, 0);
  private_of_.assign(static_cast<std::size_t>(num_joint_obs_) * n_agents, 0);
  for (int jo = 0; jo < num_joint_obs_; ++jo) {
    int rest = jo;
    for (int i = n_agents - 1; i >= 0; --i) {
      private_of_[static_cast<std::size_t>(jo) * n_agents + i] =
          rest % num_private_obs(i);
      rest /= num_private_obs(i);
    }
    public_of_[jo] = rest;
  }
}

void PosgModel::finalize() {
  if (n_agents < 1) throw ValidationError("model needs at least one agent");
  if (static_cast<int>(actions.size()) != n_agents ||
      static_cast<int>(private_obs.size()) != n_agents) {
    throw ValidationError("dimension mismatch: expected " +
                          std::to_string(n_agents) +
                          " action and observation lists");
  }
  if (states.empty()) throw ValidationError("model has no states");
  for (int i = 0; i < n_agents; ++i) {
    if (actions[i].empty()) {
      throw ValidationError("agent " + std::to_string(i + 1) +
                            " has no actions");
    }
    if (private_obs[i].empty()) {
      throw ValidationError("agent " + std::to_string(i + 1) +
                            " has no observations");
    }
  }
  if (public_obs.empty()) public_obs = {"none"};
  rebuild_index();
  const std::size_t nx = states.size();
  transition.assign(static_cast<std::size_t>(num_joint_actions_) * nx * nx,
                    0.0);
  observation.assign(
      static_cast<std::size_t>(num_joint_actions_) * nx * num_joint_obs_, 0.0);
  rewards.assign(n_agents, std::vector<double>(nx * num_joint_actions_, 0.0));
  rewards_declared.assign(n_agents, false);
  if (start.size() != nx) start.assign(nx, 0.0);
}

namespace {

bool rewards_equal(const std::vector<double>& a, const std::vector<double>& b,
                   double sign) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - sign * b[k]) > kStochasticTolerance) return false;
  }
  return true;
}

}  // namespace

bool has_zero_sum_rewards(const PosgModel& m) {
  return m.n_agents == 2 && rewards_equal(m.rewards[0], m.rewards[1], -1.0);
}

bool has_common_rewards(const PosgModel& m) {
  for (int i = 1; i < m.n_agents; ++i) {
    if (!rewards_equal(m.rewards[0], m.rewards[i], 1.0)) return false;
  }
  return true;
}

Criterion classify(const PosgModel& model) {
  if (model.declared_criterion) {
    switch (*model.declared_criterion) {
      case Criterion::kStackelberg:
        if (model.n_agents != 2) {
          throw ValidationError("stackelberg criterion requires 2 agents");
        }
        return Criterion::kStackelberg;
      case Criterion::kZeroSum:
        if (model.n_agents != 2) {
          throw ValidationError("zerosum criterion requires 2 agents");
        }
        if (!has_zero_sum_rewards(model)) {
          throw ValidationError(
              "declared zerosum but rewards of agent 1 and 2 do not sum to "
              "zero");
        }
        return Criterion::kZeroSum;
      case Criterion::kCommon:
        if (!has_common_rewards(model)) {
          throw ValidationError(
              "declared common but agents' reward tables differ");
        }
        return Criterion::kCommon;
      case Criterion::kGeneral:
        break;
    }
  }
  if (has_common_rewards(model)) return Criterion::kCommon;
  if (has_zero_sum_rewards(model)) return Criterion::kZeroSum;
  return Criterion::kGeneral;
}

void validate(PosgModel& model) {
  const int nx = model.num_states();
  for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
    for (int x = 0; x < nx; ++x) {
      double sum = 0.0;
      for (int y = 0; y < nx; ++y) {
        const double p = model.T(ja, x, y);
        if (p < 0.0) {
          throw ValidationError("negative transition probability from " +
                                model.states[x]);
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kStochasticTolerance) {
        throw ValidationError("transition row sum " + std::to_string(sum) +
                              " != 1 for state " + model.states[x] +
                              " under joint action " + std::to_string(ja));
      }
    }
    for (int y = 0; y < nx; ++y) {
      double sum = 0.0;
      for (int jo = 0; jo < model.num_joint_obs(); ++jo) {
        const double p = model.O(ja, y, jo);
        if (p < 0.0) {
          throw ValidationError("negative observation probability at " +
                                model.states[y]);
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kStochasticTolerance) {
        throw ValidationError("observation row sum " + std::to_string(sum) +
                              " != 1 for state " + model.states[y] +
                              " under joint action " + std::to_string(ja));
      }
    }
  }
  double start_sum = 0.0;
  for (double p : model.start) {
    if (p < 0.0) throw ValidationError("negative start probability");
    start_sum += p;
  }
  if (std::abs(start_sum - 1.0) > kStochasticTolerance) {
    throw ValidationError("start distribution row sum " +
                          std::to_string(start_sum) + " != 1");
  }
  for (const auto& table : model.rewards) {
    for (double r : table) {
      if (!std::isfinite(r)) throw ValidationError("non-finite reward");
    }
  }
  if (!(model.discount >= 0.0 && model.discount <= 1.0)) {
    throw ValidationError("discount must lie in [0, 1]");
  }
  if (model.horizon < 1) throw ValidationError("horizon must be >= 1");
  model.criterion = classify(model);
}

PosgModel with_criterion(const PosgModel& model, Criterion criterion) {
  PosgModel out = model;
  if (criterion == Criterion::kZeroSum && out.n_agents == 2 &&
      !out.rewards_declared[1]) {
    for (std::size_t k = 0; k < out.rewards[0].size(); ++k) {
      out.rewards[1][k] = -out.rewards[0][k];
    }
  } else if (criterion == Criterion::kCommon) {
    for (int i = 1; i < out.n_agents; ++i) {
      if (!out.rewards_declared[i]) out.rewards[i] = out.rewards[0];
    }
  }
  out.declared_criterion = criterion;
  out.criterion = classify(out);
  return out;
}

PosgModel with_horizon(const PosgModel& model, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  PosgModel out = model;
  out.horizon = horizon;
  return out;
}

PosgModel with_start(const PosgModel& model, std::vector<double> start) {
  PosgModel out = model;
  out.start = std::move(start);
  validate(out);
  return out;
}

std::vector<Outcome> joint_dynamics(const PosgModel& model, int x, int ja) {
  if (x < 0 || x >= model.num_states()) {
    throw std::out_of_range("state index out of range");
  }
  if (ja < 0 || ja >= model.num_joint_actions()) {
    throw std::out_of_range("joint action index out of range");
  }
  std::vector<Outcome> out;
  for (int y = 0; y < model.num_states(); ++y) {
    const double pt = model.T(ja, x, y);
    if (pt == 0.0) continue;
    for (int jo = 0; jo < model.num_joint_obs(); ++jo) {
      const double po = model.O(ja, y, jo);
      if (po == 0.0) continue;
      out.push_back({y, jo, pt * po});
    }
  }
  return out;
}

int horizon_for_epsilon(double gamma, double reward_bound, double epsilon) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument(
        "horizon_for_epsilon requires a discount in [0, 1)");
  }
  if (!(reward_bound > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument(
        "horizon_for_epsilon requires positive reward bound and epsilon");
  }
  if (gamma == 0.0) return 1;
  const double target = (1.0 - gamma) * epsilon / reward_bound;
  const double steps = std::ceil(std::log(target) / std::log(gamma));
  if (!(steps >= 1.0)) return 1;
  return static_cast<int>(steps);
}

}  // namespace posg
