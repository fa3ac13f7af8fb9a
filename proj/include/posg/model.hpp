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

#ifndef POSG_MODEL_HPP_
#define POSG_MODEL_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posg {

// Tolerance used for every stochasticity check on model tables.
inline constexpr double kStochasticTolerance = 1e-9;

enum class Criterion { kZeroSum, kCommon, kStackelberg, kGeneral };

std::string_view criterion_name(Criterion criterion);
// Accepts "zerosum", "common", "dec" (alias of common), "stackelberg",
// "general". Throws std::invalid_argument otherwise.
Criterion parse_criterion(std::string_view name);

// A finite-horizon partially observable stochastic game.
//
// Every agent observation is a pair (public, private). The joint observation
// index enumerates (w, z~^1, ..., z~^n) with the public component most
// significant; the joint action index enumerates (u^1, ..., u^n) with agent 0
// most significant. An agent's own observation index is
// w * |Z~^i| + z~^i.
//
// Tables are dense. Call finalize() after filling the label lists to size the
// tables, then validate() once the numbers are in.
struct PosgModel {
  int n_agents = 0;
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> actions;
  std::vector<std::vector<std::string>> private_obs;
  std::vector<std::string> public_obs{"none"};

  // transition[(ja * |X| + x) * |X| + x']
  std::vector<double> transition;
  // observation[(ja * |X| + x') * |JO| + jo]
  std::vector<double> observation;
  // rewards[i][x * |JA| + ja]
  std::vector<std::vector<double>> rewards;

  double discount = 1.0;
  int horizon = 1;
  std::vector<double> start;

  std::optional<Criterion> declared_criterion;
  // Resolved by validate() through classify().
  Criterion criterion = Criterion::kGeneral;
  // Which agents had at least one explicit reward line.
  std::vector<bool> rewards_declared;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_actions(int agent) const {
    return static_cast<int>(actions[agent].size());
  }
  int num_private_obs(int agent) const {
    return static_cast<int>(private_obs[agent].size());
  }
  int num_public_obs() const { return static_cast<int>(public_obs.size()); }
  // |Z^i| = |W| * |Z~^i|.
  int num_agent_obs(int agent) const {
    return num_public_obs() * num_private_obs(agent);
  }
  int num_joint_actions() const { return num_joint_actions_; }
  int num_joint_obs() const { return num_joint_obs_; }

  double T(int ja, int x, int next) const {
    return transition[(static_cast<std::size_t>(ja) * num_states() + x) *
                          num_states() +
                      next];
  }
  double O(int ja, int next, int jo) const {
    return observation[(static_cast<std::size_t>(ja) * num_states() + next) *
                           num_joint_obs_ +
                       jo];
  }
  double R(int agent, int x, int ja) const {
    return rewards[agent][static_cast<std::size_t>(x) * num_joint_actions_ +
                          ja];
  }
  double& T_ref(int ja, int x, int next) {
    return transition[(static_cast<std::size_t>(ja) * num_states() + x) *
                          num_states() +
                      next];
  }
  double& O_ref(int ja, int next, int jo) {
    return observation[(static_cast<std::size_t>(ja) * num_states() + next) *
                           num_joint_obs_ +
                       jo];
  }
  double& R_ref(int agent, int x, int ja) {
    return rewards[agent][static_cast<std::size_t>(x) * num_joint_actions_ +
                          ja];
  }

  int joint_action(std::span<const int> per_agent) const;
  int agent_action(int ja, int agent) const {
    return action_of_[static_cast<std::size_t>(ja) * n_agents + agent];
  }
  std::vector<int> split_joint_action(int ja) const;

  // Joint observation from a public component and one private component
  // per agent.
  int joint_obs(int w, std::span<const int> private_per_agent) const;
  int public_of(int jo) const { return public_of_[jo]; }
  int private_of(int jo, int agent) const {
    return private_of_[static_cast<std::size_t>(jo) * n_agents + agent];
  }
  // The observation agent i receives, as an index into its Z^i.
  int agent_obs(int jo, int agent) const {
    return public_of(jo) * num_private_obs(agent) + private_of(jo, agent);
  }
  std::string agent_obs_label(int agent, int z) const;

  // max_{i,x,u} |r^i_{x,u}|.
  double reward_bound() const;

  // Sizes every table from the label lists (zero filled) and builds the
  // index decoding caches. Existing table contents are discarded.
  void finalize();
  // Rebuilds only the decoding caches; tables must already be sized.
  void rebuild_index();

 private:
  int num_joint_actions_ = 0;
  int num_joint_obs_ = 0;
  std::vector<int> action_of_;
  std::vector<int> public_of_;
  std::vector<int> private_of_;
};

// Checks every model invariant and resolves `criterion`. Throws
// ValidationError naming the first violated invariant.
void validate(PosgModel& model);

// Strictest criterion consistent with the reward tables. Stackelberg is only
// returned when declared. Throws ValidationError when the declared criterion
// contradicts the rewards.
Criterion classify(const PosgModel& model);

// Reward-table predicates behind classify().
bool has_common_rewards(const PosgModel& model);
bool has_zero_sum_rewards(const PosgModel& model);

// Returns a copy whose criterion is `criterion`. Reward tables of agents that
// had no explicit reward lines are derived from agent 0 (negated for
// zerosum, copied for common); explicit tables must already agree.
PosgModel with_criterion(const PosgModel& model, Criterion criterion);

PosgModel with_horizon(const PosgModel& model, int horizon);
PosgModel with_start(const PosgModel& model, std::vector<double> start);

struct Outcome {
  int next_state;
  int joint_obs;
  double probability;
};

// p^{u,z}_{x,x'} = p^u_{x,x'} * p^{u,z}_{x'} for every (x', z) with positive
// mass, ordered by (x', z).
std::vector<Outcome> joint_dynamics(const PosgModel& model, int x, int ja);

// Smallest horizon whose truncation error is at most epsilon:
// ceil(log_gamma((1 - gamma) epsilon / c)), clamped below at 1.
int horizon_for_epsilon(double gamma, double reward_bound, double epsilon);

}  // namespace posg

#endif  // POSG_MODEL_HPP_
