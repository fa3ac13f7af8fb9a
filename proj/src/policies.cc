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

#include "posg/policies.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "posg/error.hpp"

namespace posg {

const ActionDist& DecisionRule::at(HistoryId h) const {
  auto it = choices.find(h);
  if (it == choices.end()) {
    throw UndefinedRuleError("undefined decision rule: agent " +
                             std::to_string(agent + 1) + " at step " +
                             std::to_string(t) + " has no choice for history " +
                             std::to_string(h));
  }
  return it->second;
}

JointDecisionRule joint_rule_at(const JointPolicy& policy, int t) {
  JointDecisionRule out;
  out.reserve(policy.size());
  for (const auto& p : policy) {
    if (t >= p.horizon()) {
      throw std::out_of_range("policy has no decision rule at step " +
                              std::to_string(t));
    }
    out.push_back(p.rules[t]);
  }
  return out;
}

JointDecisionRule others_rule_at(const JointPolicy& policy, int agent,
                                 int t) {
  JointDecisionRule out(policy.size());
  for (int j = 0; j < static_cast<int>(policy.size()); ++j) {
    if (j == agent) {
      out[j] = DecisionRule{j, t, {}};
    } else {
      if (t >= policy[j].horizon()) {
        throw std::out_of_range("policy of agent " + std::to_string(j + 1) +
                                " has no decision rule at step " +
                                std::to_string(t));
      }
      out[j] = policy[j].rules[t];
    }
  }
  return out;
}

bool PolicyTree::is_pure() const {
  for (const auto& d : nodes) {
    if (std::count(d.begin(), d.end(), 1.0) != 1) return false;
  }
  return true;
}

int PolicyTree::action_at(int node) const {
  const auto& d = nodes.at(node);
  for (int u = 0; u < static_cast<int>(d.size()); ++u) {
    if (d[u] == 1.0) return u;
  }
  throw std::logic_error("policy tree node is not deterministic");
}

PolicyTree PolicyTree::subtree(int z) const {
  if (horizon < 2) throw std::logic_error("leaf decision has no subtree");
  PolicyTree out{agent, horizon - 1, num_actions, num_obs, {}};
  out.nodes.reserve(tree_node_count(num_obs, horizon - 1));
  // Nodes of the subtree at depth d occupy a contiguous block of the
  // parent's depth d + 1 layer.
  std::uint64_t first = 1 + z;
  std::uint64_t width = 1;
  std::uint64_t layer_start = 1;
  for (int d = 0; d < horizon - 1; ++d) {
    for (std::uint64_t k = 0; k < width; ++k) {
      out.nodes.push_back(nodes[first + k]);
    }
    const std::uint64_t next_layer_start =
        layer_start * static_cast<std::uint64_t>(num_obs) + 1;
    first = next_layer_start + (first - layer_start) * num_obs;
    layer_start = next_layer_start;
    width *= num_obs;
  }
  return out;
}

std::uint64_t tree_node_count(int num_obs, int horizon) {
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (int d = 0; d < horizon; ++d) {
    total += layer;
    layer *= static_cast<std::uint64_t>(num_obs);
  }
  return total;
}

std::uint64_t pure_policy_count(int num_actions, int num_obs, int horizon) {
  const std::uint64_t nodes = tree_node_count(num_obs, horizon);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (std::uint64_t k = 0; k < nodes; ++k) {
    if (count > kMax / static_cast<std::uint64_t>(num_actions)) return kMax;
    count *= static_cast<std::uint64_t>(num_actions);
  }
  return count;
}

PolicyTree pure_tree(int agent, int horizon, int num_actions, int num_obs,
                     const std::vector<int>& node_actions) {
  if (node_actions.size() != tree_node_count(num_obs, horizon)) {
    throw std::invalid_argument("pure tree needs one action per node");
  }
  PolicyTree tree{agent, horizon, num_actions, num_obs, {}};
  tree.nodes.reserve(node_actions.size());
  for (int a : node_actions) {
    if (a < 0 || a >= num_actions) {
      throw std::out_of_range("pure tree action out of range");
    }
    ActionDist d(num_actions, 0.0);
    d[a] = 1.0;
    tree.nodes.push_back(std::move(d));
  }
  return tree;
}

PolicyTree pure_tree_at(int agent, int horizon, int num_actions, int num_obs,
                        std::uint64_t index) {
  const auto n = static_cast<int>(tree_node_count(num_obs, horizon));
  std::vector<int> actions(n);
  for (int k = n - 1; k >= 0; --k) {
    actions[k] = static_cast<int>(index % num_actions);
    index /= num_actions;
  }
  return pure_tree(agent, horizon, num_actions, num_obs, actions);
}

std::uint64_t pure_tree_index(const PolicyTree& tree) {
  std::uint64_t index = 0;
  for (int k = 0; k < tree.num_nodes(); ++k) {
    index = index * tree.num_actions + tree.action_at(k);
  }
  return index;
}

PolicyTree constant_tree(const PosgModel& model, int agent, int horizon,
                         int action) {
  const int nz = model.num_agent_obs(agent);
  std::vector<int> actions(tree_node_count(nz, horizon), action);
  return pure_tree(agent, horizon, model.num_actions(agent), nz, actions);
}

std::vector<PolicyTree> enumerate_pure_policies(const PosgModel& model,
                                                int agent, int horizon,
                                                std::uint64_t cap) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const int nu = model.num_actions(agent);
  const int nz = model.num_agent_obs(agent);
  const std::uint64_t count = pure_policy_count(nu, nz, horizon);
  if (count > cap) {
    throw CapExceededError(
        "pure policies of agent " + std::to_string(agent + 1), count, cap);
  }
  std::vector<PolicyTree> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    out.push_back(pure_tree_at(agent, horizon, nu, nz, k));
  }
  return out;
}

const ActionDist& decision_at(const PolicyTree& tree,
                              const PrivateHistory& history) {
  if (history.length() >= tree.horizon) {
    throw UndefinedRuleError("unreachable history: length " +
                             std::to_string(history.length()) +
                             " is not below the horizon");
  }
  std::uint64_t node = 0;
  for (const auto& step : history.steps) {
    if (step.action < 0 || step.action >= tree.num_actions ||
        step.obs < 0 || step.obs >= tree.num_obs) {
      throw std::out_of_range("history step out of range");
    }
    if (tree.nodes[node][step.action] <= 0.0) {
      throw UndefinedRuleError(
          "unreachable history: the tree never plays action " +
          std::to_string(step.action) + " at node " + std::to_string(node));
    }
    node = node * tree.num_obs + 1 + step.obs;
  }
  return tree.nodes[node];
}

Policy to_policy(const PolicyTree& tree) {
  const HistoryCodec codec(tree.num_actions, tree.num_obs);
  Policy policy{tree.agent, {}};
  std::vector<std::pair<HistoryId, std::uint64_t>> layer{{codec.root(), 0}};
  for (int t = 0; t < tree.horizon; ++t) {
    DecisionRule rule{tree.agent, t, {}};
    std::vector<std::pair<HistoryId, std::uint64_t>> next;
    for (const auto& [h, node] : layer) {
      const auto& d = tree.nodes[node];
      rule.choices.emplace(h, d);
      if (t + 1 == tree.horizon) continue;
      for (int u = 0; u < tree.num_actions; ++u) {
        if (d[u] <= 0.0) continue;
        for (int z = 0; z < tree.num_obs; ++z) {
          next.emplace_back(codec.child(h, u, z),
                            node * tree.num_obs + 1 + z);
        }
      }
    }
    policy.rules.push_back(std::move(rule));
    layer = std::move(next);
  }
  return policy;
}

JointPolicy to_joint_policy(const std::vector<PolicyTree>& trees) {
  JointPolicy out;
  out.reserve(trees.size());
  for (const auto& t : trees) out.push_back(to_policy(t));
  return out;
}

PolicyTree to_tree(const Policy& policy, int num_actions, int num_obs) {
  const HistoryCodec codec(num_actions, num_obs);
  PolicyTree tree{policy.agent, policy.horizon(), num_actions, num_obs, {}};
  std::vector<HistoryId> layer{codec.root()};
  for (int t = 0; t < policy.horizon(); ++t) {
    std::vector<HistoryId> next;
    for (HistoryId h : layer) {
      const auto& d = policy.at(t, h);
      tree.nodes.push_back(d);
      const int u = static_cast<int>(
          std::max_element(d.begin(), d.end()) - d.begin());
      for (int z = 0; z < num_obs; ++z) next.push_back(codec.child(h, u, z));
    }
    layer = std::move(next);
  }
  return tree;
}

Policy anchored_policy(int agent, int horizon, int t0,
                       const std::vector<HistoryId>& anchors,
                       const std::vector<PolicyTree>& trees) {
  if (anchors.size() != trees.size()) {
    throw std::invalid_argument("anchored policy needs one tree per anchor");
  }
  Policy policy{agent, {}};
  for (int t = 0; t < horizon; ++t) policy.rules.push_back({agent, t, {}});
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const auto& tree = trees[k];
    if (tree.horizon != horizon - t0) {
      throw std::invalid_argument("anchored tree depth differs from horizon");
    }
    const HistoryCodec codec(tree.num_actions, tree.num_obs);
    const Policy local = to_policy(tree);
    // Re-root every local history under the anchor.
    std::map<HistoryId, HistoryId> rebase{{codec.root(), anchors[k]}};
    for (int d = 0; d < tree.horizon; ++d) {
      for (const auto& [h, dist] : local.rules[d].choices) {
        const HistoryId global = rebase.at(h);
        policy.rules[t0 + d].choices[global] = dist;
        for (int u = 0; u < tree.num_actions; ++u) {
          if (dist[u] <= 0.0) continue;
          for (int z = 0; z < tree.num_obs; ++z) {
            rebase[codec.child(h, u, z)] = codec.child(global, u, z);
          }
        }
      }
    }
  }
  return policy;
}

std::string policy_to_json(const PosgModel& model, const PolicyTree& tree) {
  nlohmann::ordered_json out;
  out["agent"] = tree.agent + 1;
  out["horizon"] = tree.horizon;
  auto nodes = nlohmann::ordered_json::array();
  // Walk nodes in index order, tracking the observation path of each.
  std::vector<std::vector<int>> paths{{}};
  for (int n = 0; n < tree.num_nodes(); ++n) {
    nlohmann::ordered_json node;
    std::vector<std::string> obs;
    for (int z : paths[n]) obs.push_back(model.agent_obs_label(tree.agent, z));
    node["observations"] = obs;
    const auto& d = tree.nodes[n];
    if (std::count(d.begin(), d.end(), 1.0) == 1) {
      node["action"] = model.actions[tree.agent][tree.action_at(n)];
    } else {
      nlohmann::ordered_json dist;
      for (int u = 0; u < tree.num_actions; ++u) {
        if (d[u] > 0.0) dist[model.actions[tree.agent][u]] = d[u];
      }
      node["distribution"] = dist;
    }
    nodes.push_back(node);
    if (static_cast<int>(paths[n].size()) + 1 < tree.horizon) {
      for (int z = 0; z < tree.num_obs; ++z) {
        auto p = paths[n];
        p.push_back(z);
        paths.push_back(std::move(p));
      }
    }
  }
  out["nodes"] = nodes;
  return out.dump();
}

DecisionRule random_rule(const PosgModel& model, int agent, int t,
                         const std::vector<HistoryId>& histories, Rng& rng,
                         int max_support) {
  const int nu = model.num_actions(agent);
  const int k = max_support <= 0 ? nu : std::min(max_support, nu);
  DecisionRule rule{agent, t, {}};
  for (HistoryId h : histories) {
    std::vector<int> order(nu);
    for (int u = 0; u < nu; ++u) order[u] = u;
    // Partial Fisher-Yates for the support.
    for (int s = 0; s < k; ++s) {
      const int j = s + rng.below(nu - s);
      std::swap(order[s], order[j]);
    }
    const int size = 1 + rng.below(k);
    const auto weights = rng.simplex(size);
    ActionDist d(nu, 0.0);
    for (int s = 0; s < size; ++s) d[order[s]] = weights[s];
    rule.choices.emplace(h, std::move(d));
  }
  return rule;
}

Policy random_policy(const PosgModel& model, int agent, int horizon, Rng& rng,
                     int max_support) {
  const HistoryCodec codec(model, agent);
  Policy policy{agent, {}};
  for (int t = 0; t < horizon; ++t) {
    policy.rules.push_back(random_rule(model, agent, t,
                                       codec.all_of_length(t), rng,
                                       max_support));
  }
  return policy;
}

JointPolicy random_joint_policy(const PosgModel& model, int horizon, Rng& rng,
                                int max_support) {
  JointPolicy out;
  for (int i = 0; i < model.n_agents; ++i) {
    out.push_back(random_policy(model, i, horizon, rng, max_support));
  }
  return out;
}

Policy random_pure_policy(const PosgModel& model, int agent, int horizon,
                          Rng& rng) {
  return random_policy(model, agent, horizon, rng, 1);
}

PrivateHistory project_plan_time(const PrivatePlanTimeHistory& y) {
  return y.history;
}

}  // namespace posg
