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

#ifndef POSG_POLICIES_HPP_
#define POSG_POLICIES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "posg/history.hpp"
#include "posg/model.hpp"
#include "posg/rng.hpp"

namespace posg {

// Distribution over one agent's actions.
using ActionDist = std::vector<double>;

// Decision rule of one agent at step t: private history -> action
// distribution.
struct DecisionRule {
  int agent = 0;
  int t = 0;
  std::map<HistoryId, ActionDist> choices;

  // Throws UndefinedRuleError when h is not covered.
  const ActionDist& at(HistoryId h) const;
  bool covers(HistoryId h) const { return choices.count(h) != 0; }
};

// One decision rule per agent.
using JointDecisionRule = std::vector<DecisionRule>;

// Behavioral policy of one agent: a decision rule per step.
struct Policy {
  int agent = 0;
  std::vector<DecisionRule> rules;

  int horizon() const { return static_cast<int>(rules.size()); }
  const ActionDist& at(int t, HistoryId h) const { return rules[t].at(h); }
};

using JointPolicy = std::vector<Policy>;

JointDecisionRule joint_rule_at(const JointPolicy& policy, int t);
// Like joint_rule_at but agent `agent` gets an empty rule, so its own
// policy may be absent.
JointDecisionRule others_rule_at(const JointPolicy& policy, int agent, int t);

// Reduced policy tree. Nodes are indexed by observation sequences only:
// the root is 0 and the child of node n under observation z is
// n * |Z^i| + 1 + z. A node is only consulted for histories whose actions
// have positive probability at every ancestor.
struct PolicyTree {
  int agent = 0;
  int horizon = 0;
  int num_actions = 0;
  int num_obs = 0;
  std::vector<ActionDist> nodes;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  bool is_pure() const;
  // Action of a pure node; throws std::logic_error for stochastic nodes.
  int action_at(int node) const;
  // The depth (horizon - 1) subtree rooted at the child under observation z.
  PolicyTree subtree(int z) const;
};

// Number of nodes of a reduced tree: (|Z|^h - 1) / (|Z| - 1), or h when
// |Z| = 1.
std::uint64_t tree_node_count(int num_obs, int horizon);
// |U|^nodes, saturating at UINT64_MAX.
std::uint64_t pure_policy_count(int num_actions, int num_obs, int horizon);

// Pure tree with the given action per node.
PolicyTree pure_tree(int agent, int horizon, int num_actions, int num_obs,
                     const std::vector<int>& node_actions);
// Pure tree number `index` in the enumeration order below.
PolicyTree pure_tree_at(int agent, int horizon, int num_actions, int num_obs,
                        std::uint64_t index);
// Inverse of pure_tree_at.
std::uint64_t pure_tree_index(const PolicyTree& tree);
PolicyTree constant_tree(const PosgModel& model, int agent, int horizon,
                         int action);

inline constexpr std::uint64_t kDefaultPolicyCap = 1000000;

// All reduced pure trees, ordered as a mixed radix number with node 0 most
// significant (the last node varies fastest). Throws CapExceededError when
// the count exceeds `cap`.
std::vector<PolicyTree> enumerate_pure_policies(
    const PosgModel& model, int agent, int horizon,
    std::uint64_t cap = kDefaultPolicyCap);

// Node distribution for a private history. Throws UndefinedRuleError for
// histories off the tree or not shorter than the horizon.
const ActionDist& decision_at(const PolicyTree& tree,
                              const PrivateHistory& history);

// Expands a tree into decision rules over every history reachable under
// the tree's own action support.
Policy to_policy(const PolicyTree& tree);
JointPolicy to_joint_policy(const std::vector<PolicyTree>& trees);

// Reads a policy along its own action choices from the empty history. Each
// node takes the rule at the history reached by the most likely action path
// (lowest index on ties); meant for deterministic policies.
PolicyTree to_tree(const Policy& policy, int num_actions, int num_obs);

// Policy of one agent from step t0 on: below anchors[k] it follows
// trees[k] (depth horizon - t0). Steps before t0 get empty rules.
Policy anchored_policy(int agent, int horizon, int t0,
                       const std::vector<HistoryId>& anchors,
                       const std::vector<PolicyTree>& trees);

// Deterministic node-ordered JSON text.
std::string policy_to_json(const PosgModel& model, const PolicyTree& tree);

// Rules that choose uniformly at random among at most `max_support` actions
// per history (0 means all actions), with random weights on that support.
DecisionRule random_rule(const PosgModel& model, int agent, int t,
                         const std::vector<HistoryId>& histories, Rng& rng,
                         int max_support = 0);
// A random behavioral policy defined on every history of length < horizon.
Policy random_policy(const PosgModel& model, int agent, int horizon, Rng& rng,
                     int max_support = 0);
JointPolicy random_joint_policy(const PosgModel& model, int horizon, Rng& rng,
                                int max_support = 0);
// A random pure policy defined on every history of length < horizon.
Policy random_pure_policy(const PosgModel& model, int agent, int horizon,
                          Rng& rng);

// Central planner data: start belief, joint decision rules so far and the
// public observations received.
struct PlanTimeHistory {
  std::vector<double> start;
  std::vector<JointDecisionRule> rules;
  std::vector<int> public_obs;

  int t() const { return static_cast<int>(rules.size()); }
};

// Agent i's data: start belief, its own history and the others' policy.
struct PrivatePlanTimeHistory {
  std::vector<double> start;
  PrivateHistory history;
  JointPolicy others;
};

// Drops the start belief and the others' policy.
PrivateHistory project_plan_time(const PrivatePlanTimeHistory& y);

}  // namespace posg

#endif  // POSG_POLICIES_HPP_
