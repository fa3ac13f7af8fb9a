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

#include "posg/occupancy.hpp"

#include <cmath>
#include <sstream>

#include "posg/error.hpp"
#include "posg/format.hpp"

namespace posg {
namespace {

// Probability that the joint action ja is drawn when every agent j != skip
// follows its own distribution. Returns 0 early.
double joint_prob(const PosgModel& model,
                  const std::vector<const ActionDist*>& dists, int ja,
                  int skip) {
  double p = 1.0;
  for (int j = 0; j < model.n_agents; ++j) {
    if (j == skip) continue;
    p *= (*dists[j])[model.agent_action(ja, j)];
    if (p == 0.0) return 0.0;
  }
  return p;
}

std::vector<const ActionDist*> lookup(const PosgModel& model,
                                      const JointDecisionRule& rule,
                                      const JointHistory& o, int skip) {
  std::vector<const ActionDist*> out(model.n_agents, nullptr);
  for (int j = 0; j < model.n_agents; ++j) {
    if (j != skip) out[j] = &rule.at(j).at(o[j]);
  }
  return out;
}

}  // namespace

double OccupancyState::total() const {
  double sum = 0.0;
  for (const auto& [k, p] : entries) sum += p;
  return sum;
}

double max_abs_diff(const OccupancyMap& a, const OccupancyMap& b) {
  double worst = 0.0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, p] : b) {
    if (!a.count(k)) worst = std::max(worst, std::abs(p));
  }
  return worst;
}

bool approx_equal(const OccupancyMap& a, const OccupancyMap& b, double tol) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return false;
    if (std::abs(ia->second - ib->second) > tol) return false;
  }
  return true;
}

double l1_distance(const OccupancyMap& a, const OccupancyMap& b) {
  double sum = 0.0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b) {
    if (!a.count(k)) sum += std::abs(p);
  }
  return sum;
}

OccupancyState mix(const OccupancyState& a, const OccupancyState& b,
                   double lambda) {
  if (a.t != b.t) throw std::invalid_argument("mixing occupancies of different t");
  OccupancyState out{a.t, {}};
  for (const auto& [k, p] : a.entries) out.entries[k] += lambda * p;
  for (const auto& [k, p] : b.entries) out.entries[k] += (1.0 - lambda) * p;
  for (auto it = out.entries.begin(); it != out.entries.end();) {
    it = it->second == 0.0 ? out.entries.erase(it) : std::next(it);
  }
  return out;
}

void prune_and_normalize(OccupancyMap& entries) {
  double total = 0.0;
  for (const auto& [k, p] : entries) total += p;
  if (!(total > 0.0)) throw ZeroProbabilityError("occupancy has no mass");
  double kept = 0.0;
  for (auto it = entries.begin(); it != entries.end();) {
    it->second /= total;
    if (it->second < kPruneThreshold) {
      it = entries.erase(it);
    } else {
      kept += it->second;
      ++it;
    }
  }
  if (entries.empty()) throw ZeroProbabilityError("occupancy has no mass");
  if (kept != 1.0) {
    for (auto& [k, p] : entries) p /= kept;
  }
}

OccupancyState initial_occupancy(const PosgModel& model) {
  OccupancyState s{0, {}};
  const JointHistory empty = empty_joint_history(model);
  for (int x = 0; x < model.num_states(); ++x) {
    if (model.start[x] > 0.0) s.entries[{x, empty}] = model.start[x];
  }
  return s;
}

std::vector<OccupancyBranch> step(const PosgModel& model,
                                  const OccupancyState& s,
                                  const JointDecisionRule& a) {
  const auto codecs = history_codecs(model);
  std::vector<OccupancyMap> next(model.num_public_obs());
  for (const auto& [key, p] : s.entries) {
    const auto dists = lookup(model, a, key.history, -1);
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      const double pa = joint_prob(model, dists, ja, -1);
      if (pa == 0.0) continue;
      for (const auto& out : joint_dynamics(model, key.state, ja)) {
        const int w = model.public_of(out.joint_obs);
        next[w][{out.next_state,
                 extend(codecs, model, key.history, ja, out.joint_obs)}] +=
            p * pa * out.probability;
      }
    }
  }
  std::vector<OccupancyBranch> branches;
  for (int w = 0; w < model.num_public_obs(); ++w) {
    double omega = 0.0;
    for (const auto& [k, p] : next[w]) omega += p;
    if (omega <= 0.0) continue;
    prune_and_normalize(next[w]);
    branches.push_back({w, omega, {s.t + 1, std::move(next[w])}});
  }
  return branches;
}

double expected_reward(const PosgModel& model, const OccupancyState& s,
                       const JointDecisionRule& a, int agent) {
  double total = 0.0;
  for (const auto& [key, p] : s.entries) {
    const auto dists = lookup(model, a, key.history, -1);
    double r = 0.0;
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      const double pa = joint_prob(model, dists, ja, -1);
      if (pa != 0.0) r += pa * model.R(agent, key.state, ja);
    }
    total += p * r;
  }
  return total;
}

OccupancyState occupancy_of(const PosgModel& model, const PlanTimeHistory& y) {
  if (y.public_obs.size() != y.rules.size()) {
    throw std::invalid_argument(
        "plan-time history needs one public observation per decision rule");
  }
  OccupancyState s{0, {}};
  const JointHistory empty = empty_joint_history(model);
  for (int x = 0; x < model.num_states(); ++x) {
    if (y.start.at(x) > 0.0) s.entries[{x, empty}] = y.start[x];
  }
  for (int t = 0; t < y.t(); ++t) {
    bool found = false;
    for (auto& b : step(model, s, y.rules[t])) {
      if (b.public_obs == y.public_obs[t]) {
        s = std::move(b.next);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ZeroProbabilityError("public observation " +
                                 std::to_string(y.public_obs[t]) +
                                 " has probability zero at step " +
                                 std::to_string(t));
    }
  }
  return s;
}

Factorization factorize(const OccupancyState& s, int agent) {
  Factorization f;
  f.marginal.agent = agent;
  f.conditional.agent = agent;
  for (const auto& [key, p] : s.entries) {
    f.marginal.weights[key.history[agent]] += p;
  }
  for (const auto& [key, p] : s.entries) {
    const HistoryId h = key.history[agent];
    f.conditional.slices[h][key] = p / f.marginal.weights[h];
  }
  return f;
}

OccupancyState recompose(const MarginalOccupancy& m,
                         const ConditionalOccupancy& c, int t) {
  OccupancyState s{t, {}};
  for (const auto& [h, slice] : c.slices) {
    auto it = m.weights.find(h);
    if (it == m.weights.end()) continue;
    for (const auto& [key, p] : slice) s.entries[key] += it->second * p;
  }
  return s;
}

PrivateOccupancyState initial_private_occupancy(const PosgModel& model,
                                                int agent) {
  PrivateOccupancyState s{agent, 0, HistoryCodec::root(), {}};
  s.entries = initial_occupancy(model).entries;
  return s;
}

namespace {

// Unnormalized next private occupancy for every z_i at once.
std::vector<OccupancyMap> private_successors(
    const PosgModel& model, const PrivateOccupancyState& s,
    const JointDecisionRule& others_rule, int u_i) {
  const int i = s.agent;
  const auto codecs = history_codecs(model);
  std::vector<OccupancyMap> next(model.num_agent_obs(i));
  for (const auto& [key, p] : s.entries) {
    const auto dists = lookup(model, others_rule, key.history, i);
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      if (model.agent_action(ja, i) != u_i) continue;
      const double pa = joint_prob(model, dists, ja, i);
      if (pa == 0.0) continue;
      for (const auto& out : joint_dynamics(model, key.state, ja)) {
        next[model.agent_obs(out.joint_obs, i)]
            [{out.next_state,
              extend(codecs, model, key.history, ja, out.joint_obs)}] +=
            p * pa * out.probability;
      }
    }
  }
  return next;
}

}  // namespace

std::vector<double> private_obs_probabilities(
    const PosgModel& model, const PrivateOccupancyState& s,
    const JointDecisionRule& others_rule, int u_i) {
  std::vector<double> out;
  for (const auto& m : private_successors(model, s, others_rule, u_i)) {
    double total = 0.0;
    for (const auto& [k, p] : m) total += p;
    out.push_back(total);
  }
  return out;
}

PrivateTransition private_step(const PosgModel& model,
                               const PrivateOccupancyState& s,
                               const JointDecisionRule& others_rule, int u_i,
                               int z_i) {
  if (u_i < 0 || u_i >= model.num_actions(s.agent) || z_i < 0 ||
      z_i >= model.num_agent_obs(s.agent)) {
    throw std::out_of_range("private action or observation out of range");
  }
  auto next = private_successors(model, s, others_rule, u_i);
  OccupancyMap& m = next[z_i];
  double omega = 0.0;
  for (const auto& [k, p] : m) omega += p;
  if (!(omega > 0.0)) {
    throw ZeroProbabilityError("impossible observation " +
                               model.agent_obs_label(s.agent, z_i) +
                               " for agent " + std::to_string(s.agent + 1));
  }
  prune_and_normalize(m);
  const HistoryId anchor =
      HistoryCodec(model, s.agent).child(s.anchor, u_i, z_i);
  return {omega, {s.agent, s.t + 1, anchor, std::move(m)}};
}

double private_reward(const PosgModel& model, const PrivateOccupancyState& s,
                      const JointDecisionRule& others_rule, int u_i) {
  const int i = s.agent;
  double total = 0.0;
  for (const auto& [key, p] : s.entries) {
    const auto dists = lookup(model, others_rule, key.history, i);
    double r = 0.0;
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      if (model.agent_action(ja, i) != u_i) continue;
      const double pa = joint_prob(model, dists, ja, i);
      if (pa != 0.0) r += pa * model.R(i, key.state, ja);
    }
    total += p * r;
  }
  return total;
}

PrivateOccupancyState private_occupancy(const PosgModel& model,
                                        const JointPolicy& others,
                                        const PrivateHistory& history) {
  PrivateOccupancyState s = initial_private_occupancy(model, history.agent);
  for (int t = 0; t < history.length(); ++t) {
    const auto& st = history.steps[t];
    try {
      s = private_step(model, s, others_rule_at(others, history.agent, t),
                       st.action, st.obs)
              .next;
    } catch (const ZeroProbabilityError&) {
      throw ZeroProbabilityError(
          "unreachable history " +
          history_label(model, history.agent, encode(model, history)) +
          " for agent " + std::to_string(history.agent + 1));
    }
  }
  return s;
}

PrivateOccupancyState private_occupancy(const PosgModel& model,
                                        const PrivatePlanTimeHistory& y) {
  return private_occupancy(with_start(model, y.start), y.others, y.history);
}

Mixture decompose(const PosgModel& model, const OccupancyState& s,
                  const JointPolicy& policy, int agent) {
  const auto f = factorize(s, agent);
  Mixture mixture{agent, s.t, {}};
  for (const auto& [h, weight] : f.marginal.weights) {
    const auto history = decode(model, agent, h);
    if (history.length() != s.t) {
      throw PosgError("inconsistent occupancy: history length differs from t");
    }
    mixture.components.push_back(
        {weight, private_occupancy(model, policy, history)});
  }
  const auto back = recombine(mixture);
  if (max_abs_diff(back.entries, s.entries) > kOccupancyTolerance) {
    throw PosgError(
        "inconsistent occupancy: state was not generated by the given policy");
  }
  return mixture;
}

OccupancyState recombine(const Mixture& mixture) {
  OccupancyState s{mixture.t, {}};
  for (const auto& c : mixture.components) {
    for (const auto& [key, p] : c.state.entries) {
      s.entries[key] += c.weight * p;
    }
  }
  return s;
}

std::string occupancy_to_csv(const PosgModel& model, const OccupancyMap& m) {
  std::ostringstream out;
  for (const auto& [key, p] : m) {
    out << model.states[key.state];
    for (int i = 0; i < model.n_agents; ++i) {
      out << ',' << history_label(model, i, key.history[i]);
    }
    out << ',' << format_double(p) << '\n';
  }
  return out.str();
}

std::string occupancy_to_tree(const PosgModel& model, const OccupancyMap& m) {
  std::map<HistoryId, std::vector<std::pair<OccupancyKey, double>>> groups;
  for (const auto& [key, p] : m) groups[key.history[0]].emplace_back(key, p);
  std::ostringstream out;
  for (const auto& [h, rows] : groups) {
    double weight = 0.0;
    for (const auto& r : rows) weight += r.second;
    out << history_label(model, 0, h) << " " << format_double(weight) << '\n';
    for (const auto& [key, p] : rows) {
      out << "  ";
      for (int i = 1; i < model.n_agents; ++i) {
        out << history_label(model, i, key.history[i]) << ' ';
      }
      out << model.states[key.state] << ' ' << format_double(p) << '\n';
    }
  }
  return out.str();
}

}  // namespace posg
