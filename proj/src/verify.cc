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

#include "posg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "posg/error.hpp"
#include "posg/evaluate.hpp"
#include "posg/format.hpp"

namespace posg {
namespace {

constexpr double kCorruption = 1e-3;

PropertyReport make_report(std::string property, const std::string& fixture,
                           int samples, double violation, double tolerance,
                           std::uint64_t seed, std::string notes = "") {
  PropertyReport r;
  r.property = std::move(property);
  r.fixture = fixture;
  r.samples = samples;
  r.max_violation = violation;
  r.tolerance = tolerance;
  r.passed = violation <= tolerance;
  r.seed = seed;
  r.notes = std::move(notes);
  return r;
}

std::vector<HistoryId> histories_of(const OccupancyState& s, int agent) {
  std::set<HistoryId> seen;
  for (const auto& [key, p] : s.entries) seen.insert(key.history[agent]);
  return {seen.begin(), seen.end()};
}

// Decision rules over every history of length t (small models) so that the
// raw oracles never query an undefined history.
DecisionRule rule_for_step(const PosgModel& model, int agent, int t,
                           const OccupancyState& s, Rng& rng,
                           int max_support) {
  const HistoryCodec codec(model, agent);
  const double count = std::pow(
      static_cast<double>(codec.num_actions()) * codec.num_obs(), t);
  const auto histories =
      count <= 4096.0 ? codec.all_of_length(t) : histories_of(s, agent);
  return random_rule(model, agent, t, histories, rng, max_support);
}

OccupancyState occupancy_from_start(const PosgModel& model,
                                    const std::vector<double>& start) {
  OccupancyState s{0, {}};
  for (int x = 0; x < model.num_states(); ++x) {
    if (start[x] > 0.0) s.entries[{x, empty_joint_history(model)}] = start[x];
  }
  return s;
}

// The value used by the convexity checks. The injected fault negates it and
// subtracts the squared mass, which is strictly concave along any segment.
double value_at(const PosgModel& model, const OccupancyState& s,
                Criterion criterion, const VerifyOptions& options) {
  const double v = solve_at(model, s, criterion, options.solve).values[0];
  if (!options.corrupt) return v;
  double squares = 0.0;
  for (const auto& [k, p] : s.entries) squares += p * p;
  return -v - squares;
}

// ---------------------------------------------------------------------------
// Raw trajectory oracles. These walk the model tables directly.

struct RawMaster {
  double mass = 0.0;
  OccupancyMap state;
  std::vector<double> reward;
  std::vector<double> omega;
  std::vector<OccupancyMap> next;
};

void walk_master(const PosgModel& model,
                 const std::vector<HistoryCodec>& codecs,
                 const std::vector<JointDecisionRule>& rules,
                 const std::vector<int>& stream, int tau, int x,
                 const JointHistory& o, double p, RawMaster& out) {
  const int t = static_cast<int>(stream.size());
  const int nx = model.num_states();
  auto prob_of = [&](int ja) {
    double pa = 1.0;
    for (int i = 0; i < model.n_agents; ++i) {
      pa *= rules[tau][i].at(o[i])[model.agent_action(ja, i)];
    }
    return pa;
  };
  if (tau == t) {
    out.mass += p;
    out.state[{x, o}] += p;
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      const double pa = prob_of(ja);
      if (pa == 0.0) continue;
      for (int i = 0; i < model.n_agents; ++i) {
        out.reward[i] += p * pa * model.R(i, x, ja);
      }
      for (int y = 0; y < nx; ++y) {
        const double pt = model.T(ja, x, y);
        if (pt == 0.0) continue;
        for (int jo = 0; jo < model.num_joint_obs(); ++jo) {
          const double q = p * pa * pt * model.O(ja, y, jo);
          if (q == 0.0) continue;
          const int w = model.public_of(jo);
          out.omega[w] += q;
          out.next[w][{y, extend(codecs, model, o, ja, jo)}] += q;
        }
      }
    }
    return;
  }
  for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
    const double pa = prob_of(ja);
    if (pa == 0.0) continue;
    for (int y = 0; y < nx; ++y) {
      const double pt = model.T(ja, x, y);
      if (pt == 0.0) continue;
      for (int jo = 0; jo < model.num_joint_obs(); ++jo) {
        if (model.public_of(jo) != stream[tau]) continue;
        const double q = pa * pt * model.O(ja, y, jo);
        if (q == 0.0) continue;
        walk_master(model, codecs, rules, stream, tau + 1, y,
                    extend(codecs, model, o, ja, jo), p * q, out);
      }
    }
  }
}

struct RawPrivate {
  double mass = 0.0;
  OccupancyMap state;
  std::vector<double> reward;                  // per u
  std::vector<std::vector<double>> omega;      // [u][z]
  std::vector<std::vector<OccupancyMap>> next;  // [u][z]
};

void walk_private(const PosgModel& model,
                  const std::vector<HistoryCodec>& codecs,
                  const JointPolicy& others, int agent,
                  const PrivateHistory& history, int tau, int x,
                  const JointHistory& o, double p, RawPrivate& out) {
  const int t = history.length();
  const int nx = model.num_states();
  auto others_prob = [&](int ja) {
    double pa = 1.0;
    for (int j = 0; j < model.n_agents; ++j) {
      if (j == agent) continue;
      pa *= others[j].at(tau, o[j])[model.agent_action(ja, j)];
    }
    return pa;
  };
  if (tau == t) {
    out.mass += p;
    out.state[{x, o}] += p;
    for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
      const double pa = others_prob(ja);
      if (pa == 0.0) continue;
      const int u = model.agent_action(ja, agent);
      out.reward[u] += p * pa * model.R(agent, x, ja);
      for (int y = 0; y < nx; ++y) {
        const double pt = model.T(ja, x, y);
        if (pt == 0.0) continue;
        for (int jo = 0; jo < model.num_joint_obs(); ++jo) {
          const double q = p * pa * pt * model.O(ja, y, jo);
          if (q == 0.0) continue;
          const int z = model.agent_obs(jo, agent);
          out.omega[u][z] += q;
          out.next[u][z][{y, extend(codecs, model, o, ja, jo)}] += q;
        }
      }
    }
    return;
  }
  const auto& st = history.steps[tau];
  for (int ja = 0; ja < model.num_joint_actions(); ++ja) {
    if (model.agent_action(ja, agent) != st.action) continue;
    const double pa = others_prob(ja);
    if (pa == 0.0) continue;
    for (int y = 0; y < nx; ++y) {
      const double pt = model.T(ja, x, y);
      if (pt == 0.0) continue;
      for (int jo = 0; jo < model.num_joint_obs(); ++jo) {
        if (model.agent_obs(jo, agent) != st.obs) continue;
        const double q = pa * pt * model.O(ja, y, jo);
        if (q == 0.0) continue;
        walk_private(model, codecs, others, agent, history, tau + 1, y,
                     extend(codecs, model, o, ja, jo), p * q, out);
      }
    }
  }
}

OccupancyMap scaled(const OccupancyMap& m, double factor) {
  OccupancyMap out;
  for (const auto& [k, p] : m) out[k] = p * factor;
  return out;
}

// A history of agent i drawn by simulating the joint policy for t steps.
PrivateHistory sample_history(const PosgModel& model,
                              const std::vector<double>& start,
                              const JointPolicy& policy, int agent, int t,
                              Rng& rng) {
  const auto codecs = history_codecs(model);
  PrivateHistory h{agent, {}};
  int x = rng.categorical(start);
  JointHistory o = empty_joint_history(model);
  std::vector<int> actions(model.n_agents);
  std::vector<double> weights;
  for (int tau = 0; tau < t; ++tau) {
    for (int j = 0; j < model.n_agents; ++j) {
      actions[j] = rng.categorical(policy[j].at(tau, o[j]));
    }
    const int ja = model.joint_action(actions);
    const auto outcomes = joint_dynamics(model, x, ja);
    weights.clear();
    for (const auto& out : outcomes) weights.push_back(out.probability);
    const auto& out = outcomes[rng.categorical(weights)];
    h.steps.push_back({actions[agent], model.agent_obs(out.joint_obs, agent)});
    o = extend(codecs, model, o, ja, out.joint_obs);
    x = out.next_state;
  }
  return h;
}

}  // namespace

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["property"] = property;
  j["fixture"] = fixture;
  j["kind"] = diagnostic ? "diagnostic" : "invariant";
  j["samples"] = samples;
  j["max_violation"] = max_violation;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  j["seed"] = seed;
  j["notes"] = notes;
  return j.dump();
}

double lipschitz_constant(double gamma, double c, int horizon, int t) {
  const int steps = horizon - t;
  if (gamma == 1.0) return steps * c;
  return (1.0 - std::pow(gamma, steps)) / (1.0 - gamma) * c;
}

OccupancySample sample_occupancy(const PosgModel& model, int t, Rng& rng,
                                 int max_support, const JointPolicy* others,
                                 int free_agent) {
  OccupancySample out;
  out.start = rng.simplex(model.num_states());
  out.state = occupancy_from_start(model, out.start);
  for (int i = 0; i < model.n_agents; ++i) {
    out.generator.push_back(Policy{i, {}});
  }
  for (int tau = 0; tau < t; ++tau) {
    JointDecisionRule rule;
    for (int i = 0; i < model.n_agents; ++i) {
      if (others != nullptr && i != free_agent) {
        rule.push_back((*others)[i].rules.at(tau));
      } else {
        rule.push_back(
            rule_for_step(model, i, tau, out.state, rng, max_support));
      }
      out.generator[i].rules.push_back(rule.back());
    }
    auto branches = step(model, out.state, rule);
    std::vector<double> weights;
    for (const auto& b : branches) weights.push_back(b.probability);
    out.state = std::move(branches[rng.categorical(weights)].next);
  }
  return out;
}

PropertyReport check_sufficiency_master(const PosgModel& model,
                                        const std::string& fixture,
                                        const VerifyOptions& options) {
  const auto codecs = history_codecs(model);
  double worst = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = rng.below(model.horizon);
    const auto sample = sample_occupancy(model, t, rng, 0);
    // The public stream is read back from the sampled histories.
    std::vector<int> stream;
    std::vector<JointDecisionRule> rules;
    {
      const auto& key = sample.state.entries.begin()->first;
      const auto steps = codecs[0].steps(key.history[0]);
      for (const auto& st : steps) {
        stream.push_back(st.obs / model.num_private_obs(0));
      }
      for (int tau = 0; tau < t; ++tau) {
        rules.push_back(joint_rule_at(sample.generator, tau));
      }
    }
    JointDecisionRule a;
    for (int i = 0; i < model.n_agents; ++i) {
      a.push_back(rule_for_step(model, i, t, sample.state, rng, 0));
    }
    rules.push_back(a);

    RawMaster raw;
    raw.reward.assign(model.n_agents, 0.0);
    raw.omega.assign(model.num_public_obs(), 0.0);
    raw.next.resize(model.num_public_obs());
    for (int x = 0; x < model.num_states(); ++x) {
      if (sample.start[x] > 0.0) {
        walk_master(model, codecs, rules, stream, 0, x,
                    empty_joint_history(model), sample.start[x], raw);
      }
    }

    const OccupancyState& s = sample.state;
    worst = std::max(worst,
                     max_abs_diff(s.entries, scaled(raw.state, 1.0 / raw.mass)));
    for (int i = 0; i < model.n_agents; ++i) {
      double r = expected_reward(model, s, a, i);
      if (options.corrupt) r += kCorruption;
      worst = std::max(worst, std::abs(r - raw.reward[i] / raw.mass));
    }
    const auto branches = step(model, s, a);
    for (int w = 0; w < model.num_public_obs(); ++w) {
      const double raw_omega = raw.omega[w] / raw.mass;
      const OccupancyBranch* b = nullptr;
      for (const auto& br : branches) {
        if (br.public_obs == w) b = &br;
      }
      if (b == nullptr) {
        worst = std::max(worst, raw_omega);
        continue;
      }
      worst = std::max(worst, std::abs(b->probability - raw_omega));
      worst = std::max(worst,
                       max_abs_diff(b->next.entries,
                                    scaled(raw.next[w], 1.0 / raw.omega[w])));
    }
  }
  return make_report("sufficiency-master", fixture, options.samples, worst,
                     options.exact_tolerance, options.seed,
                     "reward, public observation and next occupancy");
}

PropertyReport check_sufficiency_private(const PosgModel& model, int agent,
                                         const std::string& fixture,
                                         const VerifyOptions& options) {
  const auto codecs = history_codecs(model);
  const int nu = model.num_actions(agent);
  const int nz = model.num_agent_obs(agent);
  double worst = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = rng.below(model.horizon);
    const auto start = rng.simplex(model.num_states());
    const PosgModel m = with_start(model, start);
    const JointPolicy policy = random_joint_policy(m, m.horizon, rng, 0);
    const PrivateHistory history =
        sample_history(m, start, policy, agent, t, rng);

    RawPrivate raw;
    raw.reward.assign(nu, 0.0);
    raw.omega.assign(nu, std::vector<double>(nz, 0.0));
    raw.next.assign(nu, std::vector<OccupancyMap>(nz));
    for (int x = 0; x < m.num_states(); ++x) {
      if (start[x] > 0.0) {
        walk_private(m, codecs, policy, agent, history, 0, x,
                     empty_joint_history(m), start[x], raw);
      }
    }

    const PrivateOccupancyState s = private_occupancy(m, policy, history);
    worst = std::max(worst,
                     max_abs_diff(s.entries, scaled(raw.state, 1.0 / raw.mass)));
    const HistoryId anchor = encode(m, history);
    for (const auto& [key, p] : s.entries) {
      if (key.history[agent] != anchor) worst = std::max(worst, 1.0);
    }
    const JointDecisionRule rule = others_rule_at(policy, agent, t);
    for (int u = 0; u < nu; ++u) {
      double r = private_reward(m, s, rule, u);
      if (options.corrupt) r += kCorruption;
      worst = std::max(worst, std::abs(r - raw.reward[u] / raw.mass));
      const auto omega = private_obs_probabilities(m, s, rule, u);
      for (int z = 0; z < nz; ++z) {
        const double raw_omega = raw.omega[u][z] / raw.mass;
        worst = std::max(worst, std::abs(omega[z] - raw_omega));
        if (omega[z] <= 0.0 || raw.omega[u][z] <= 0.0) continue;
        const auto next = private_step(m, s, rule, u, z);
        worst = std::max(
            worst, max_abs_diff(next.next.entries,
                                scaled(raw.next[u][z], 1.0 / raw.omega[u][z])));
      }
    }
  }
  return make_report("sufficiency-private-" + std::to_string(agent + 1),
                     fixture, options.samples, worst, options.exact_tolerance,
                     options.seed,
                     "private reward per action, private observation and next "
                     "private occupancy");
}

PropertyReport check_best_response(const PosgModel& model, int agent,
                                   const std::string& fixture,
                                   const VerifyOptions& options) {
  double worst = 0.0;
  int mismatched = 0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const JointPolicy others = random_joint_policy(model, model.horizon, rng, 0);
    const auto h = best_response_history(model, others, agent);
    auto p = best_response_private(model, others, agent);
    if (options.corrupt) p.value += kCorruption;
    worst = std::max(worst, std::abs(h.value - p.value));
    bool same = true;
    for (int t = 0; t < model.horizon; ++t) {
      if (h.policy.rules[t].choices != p.policy.rules[t].choices) same = false;
    }
    if (!same) {
      ++mismatched;
      worst = std::max(worst, 1.0);
    }
  }
  return make_report("best-response-" + std::to_string(agent + 1), fixture,
                     options.samples, worst, options.exact_tolerance,
                     options.seed,
                     "history vs private occupancy dynamic programming; "
                     "policy mismatches " + std::to_string(mismatched));
}

PropertyReport check_slave_structure(const PosgModel& model,
                                     const JointPolicy& others, int agent,
                                     const std::string& fixture,
                                     const VerifyOptions& options) {
  double worst_linear = 0.0;
  double worst_pwlc = 0.0;
  const int nu = model.num_actions(agent);
  const int nz = model.num_agent_obs(agent);
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = rng.below(model.horizon);
    const auto sample =
        sample_occupancy(model, t, rng, options.max_support, &others, agent);
    const PosgModel m = with_start(model, sample.start);
    const Mixture base = decompose(m, sample.state, sample.generator, agent);
    Mixture mixture = base;
    const auto lambda = rng.simplex(static_cast<int>(base.components.size()));
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      mixture.components[c].weight = lambda[c];
    }
    OccupancyState s = recombine(mixture);
    for (auto it = s.entries.begin(); it != s.entries.end();) {
      it = it->second == 0.0 ? s.entries.erase(it) : std::next(it);
    }

    double value = best_response_history(m, others, agent, s).value;
    if (options.corrupt) value += kCorruption;
    double linear = 0.0;
    for (const auto& c : mixture.components) {
      linear += c.weight * private_value(m, others, c.state);
    }
    worst_linear = std::max(worst_linear, std::abs(value - linear));

    // Best linear evaluation over agent i's pure continuations.
    const auto anchors = histories_of(s, agent);
    const int depth = m.horizon - t;
    const std::uint64_t trees = pure_policy_count(nu, nz, depth);
    std::uint64_t count = 1;
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      if (count > options.solve.agent_cap / trees) {
        throw CapExceededError("continuations of agent " +
                                   std::to_string(agent + 1),
                               count * trees, options.solve.agent_cap);
      }
      count *= trees;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t j = 0; j < count; ++j) {
      std::vector<PolicyTree> picks(anchors.size());
      std::uint64_t rest = j;
      for (std::size_t a = anchors.size(); a > 0; --a) {
        picks[a - 1] = pure_tree_at(agent, depth, nu, nz, rest % trees);
        rest /= trees;
      }
      JointPolicy joint = others;
      joint[agent] = anchored_policy(agent, m.horizon, t, anchors, picks);
      const auto tables = evaluate_history(m, joint, agent, s);
      best = std::max(best, linear_eval(s, tables[t]));
    }
    worst_pwlc = std::max(worst_pwlc, std::abs(value - best));
  }
  return make_report(
      "slave-structure-" + std::to_string(agent + 1), fixture,
      options.samples, std::max(worst_linear, worst_pwlc),
      options.exact_tolerance, options.seed,
      "linearity over private occupancy mixtures " +
          format_double(worst_linear) + "; max of pure linear evaluations " +
          format_double(worst_pwlc));
}

namespace {

// Convexity of the value along the marginal of `mix_agent` with its
// conditional held fixed.
PropertyReport marginal_convexity(const PosgModel& model, Criterion criterion,
                                  int mix_agent, const std::string& name,
                                  const std::string& fixture,
                                  const VerifyOptions& options) {
  double worst = 0.0;
  int trivial = 0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = model.horizon > 1 ? 1 + rng.below(model.horizon - 1) : 0;
    const auto sample = sample_occupancy(model, t, rng, options.max_support);
    const auto f = factorize(sample.state, mix_agent);
    const int n = static_cast<int>(f.marginal.weights.size());
    if (n == 1) ++trivial;
    MarginalOccupancy m1 = f.marginal;
    MarginalOccupancy m2 = f.marginal;
    const auto w1 = rng.simplex(n);
    const auto w2 = rng.simplex(n);
    int c = 0;
    for (auto& [h, w] : m1.weights) w = w1[c++];
    c = 0;
    for (auto& [h, w] : m2.weights) w = w2[c++];
    const double lambda = (1 + rng.below(9)) / 10.0;
    const auto s1 = recompose(m1, f.conditional, t);
    const auto s2 = recompose(m2, f.conditional, t);
    const auto sm = mix(s1, s2, lambda);
    const double v1 = value_at(model, s1, criterion, options);
    const double v2 = value_at(model, s2, criterion, options);
    const double vm = value_at(model, sm, criterion, options);
    worst = std::max(worst, vm - (lambda * v1 + (1.0 - lambda) * v2));
  }
  return make_report(name, fixture, options.samples, std::max(0.0, worst),
                     options.solver_tolerance, options.seed,
                     "marginal of agent " + std::to_string(mix_agent + 1) +
                         " varied at fixed conditional; single-anchor samples " +
                         std::to_string(trivial));
}

PropertyReport dec_convexity(const PosgModel& model, const std::string& fixture,
                             const VerifyOptions& options) {
  double worst = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = rng.below(model.horizon);
    const auto a = sample_occupancy(model, t, rng, options.max_support);
    const auto b = sample_occupancy(model, t, rng, options.max_support);
    const double lambda = (1 + rng.below(9)) / 10.0;
    const auto sm = mix(a.state, b.state, lambda);
    const double va = value_at(model, a.state, Criterion::kCommon, options);
    const double vb = value_at(model, b.state, Criterion::kCommon, options);
    const double vm = value_at(model, sm, Criterion::kCommon, options);
    worst = std::max(worst, vm - (lambda * va + (1.0 - lambda) * vb));
  }
  return make_report("dec-convexity", fixture, options.samples,
                     std::max(0.0, worst), options.solver_tolerance,
                     options.seed, "random same-step occupancy mixtures");
}

PropertyReport dec_certificate(const PosgModel& model,
                               const std::string& fixture,
                               const VerifyOptions& options) {
  double worst = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = rng.below(model.horizon);
    const auto sample = sample_occupancy(model, t, rng, options.max_support);
    const OccupancyState& s = sample.state;
    const MasterGame game(model, s, options.solve);
    const Equilibrium eq = game.solve_common();
    double value = eq.values[0];
    if (options.corrupt) value += kCorruption;
    // The argmax joint policy attains the value.
    JointPolicy joint;
    for (int i = 0; i < model.n_agents; ++i) {
      joint.push_back(game.policy(i, eq.mixtures[i][0].first));
    }
    const auto tables = evaluate_history(model, joint, 0, s);
    worst = std::max(worst, std::abs(value - linear_eval(s, tables[t])));
    // No sampled pure joint policy beats it.
    for (int r = 0; r < 8; ++r) {
      std::vector<std::uint64_t> pick(model.n_agents);
      for (int i = 0; i < model.n_agents; ++i) {
        pick[i] = static_cast<std::uint64_t>(
            rng.uniform() * static_cast<double>(game.num_strategies(i)));
      }
      worst = std::max(worst, game.payoff(0, pick) - value);
    }
  }
  return make_report("dec-pwlc-certificate", fixture, options.samples, worst,
                     options.solver_tolerance, options.seed,
                     "argmax policy re-evaluated by history recursion");
}

struct GridPoint {
  double belief;
  OccupancyState state;
};

std::vector<GridPoint> belief_grid(const PosgModel& model, int points) {
  std::vector<GridPoint> out;
  for (int k = 0; k < points; ++k) {
    const double b = static_cast<double>(k) / (points - 1);
    out.push_back({b, occupancy_from_start(model, {b, 1.0 - b})});
  }
  return out;
}

}  // namespace

std::vector<PropertyReport> check_master_structure(
    const PosgModel& model, Criterion criterion, const std::string& fixture,
    const VerifyOptions& options) {
  if (criterion == Criterion::kGeneral ||
      (criterion == Criterion::kCommon && !has_common_rewards(model)) ||
      (criterion == Criterion::kZeroSum && !has_zero_sum_rewards(model)) ||
      (criterion == Criterion::kStackelberg && model.n_agents != 2)) {
    throw PosgError("criterion mismatch: model rewards do not fit " +
                    std::string(criterion_name(criterion)));
  }
  std::vector<PropertyReport> out;
  if (criterion == Criterion::kCommon) {
    out.push_back(dec_convexity(model, fixture, options));
    out.push_back(dec_certificate(model, fixture, options));
    for (int i = 0; i < model.n_agents; ++i) {
      out.push_back(marginal_convexity(
          model, criterion, i,
          "dec-marginal-convexity-" + std::to_string(i + 1), fixture,
          options));
    }
    return out;
  }
  if (criterion == Criterion::kStackelberg) {
    out.push_back(marginal_convexity(model, criterion, 1, "st-b2-convexity",
                                     fixture, options));
    return out;
  }

  out.push_back(marginal_convexity(model, criterion, 1, "zs-bnoti-convexity",
                                   fixture, options));

  // Max-of-concave certificate: the optimal leader mixture's concave
  // component attains the value, the follower mixture caps it, and no pure
  // leader component exceeds it.
  std::vector<GridPoint> points;
  const bool grid = model.num_states() == 2;
  if (grid) {
    points = belief_grid(model, options.grid);
  } else {
    for (int k = 0; k < options.samples; ++k) {
      Rng rng(stream_seed(options.seed, k));
      const auto sample = sample_occupancy(model, 0, rng, options.max_support);
      points.push_back({0.0, sample.state});
    }
  }
  double worst = 0.0;
  std::vector<double> values;
  for (const auto& p : points) {
    const MasterGame game(model, p.state, options.solve);
    const MatrixGame a = game.normal_form(0);
    const MatrixGameSolution sol = matrix_game_value(a, options.exact_tolerance);
    values.push_back(sol.value);
    double value = sol.value;
    if (options.corrupt) value += kCorruption;
    double attained = std::numeric_limits<double>::infinity();
    for (int c = 0; c < a.cols; ++c) {
      double v = 0.0;
      for (int r = 0; r < a.rows; ++r) v += sol.row[r] * a.at(r, c);
      attained = std::min(attained, v);
    }
    double capped = -std::numeric_limits<double>::infinity();
    double pure = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < a.rows; ++r) {
      double v = 0.0;
      double lowest = std::numeric_limits<double>::infinity();
      for (int c = 0; c < a.cols; ++c) {
        v += sol.col[c] * a.at(r, c);
        lowest = std::min(lowest, a.at(r, c));
      }
      capped = std::max(capped, v);
      pure = std::max(pure, lowest);
    }
    worst = std::max({worst, value - attained, capped - value, pure - value});
  }
  out.push_back(make_report(
      "zs-max-of-concave", fixture, static_cast<int>(points.size()),
      std::max(0.0, worst), options.solver_tolerance, options.seed,
      grid ? "belief grid of " + std::to_string(options.grid) + " points"
           : "random start beliefs"));

  if (grid) {
    // Concavity gap of the value over standard-basis mixtures of the start.
    double gap = -std::numeric_limits<double>::infinity();
    std::string where;
    const int n = static_cast<int>(points.size());
    for (int i = 0; i < n; ++i) {
      for (int k = i + 2; k < n; ++k) {
        for (int j = i + 1; j < k; ++j) {
          const double bi = points[i].belief;
          const double bj = points[j].belief;
          const double bk = points[k].belief;
          const double lam = (bk - bj) / (bk - bi);
          const double chord = lam * values[i] + (1.0 - lam) * values[k];
          if (values[j] - chord > gap + 1e-15) {
            gap = values[j] - chord;
            where = "b=" + format_double(bi) + "," + format_double(bj) + "," +
                    format_double(bk);
          }
        }
      }
    }
    PropertyReport probe = make_report(
        "zs-standard-basis-gap", fixture, n, gap, options.solver_tolerance,
        options.seed, "expected positive; largest gap at " + where);
    probe.diagnostic = true;
    probe.passed = gap > options.solver_tolerance;
    out.push_back(probe);
  }
  return out;
}

PropertyReport check_lipschitz(const PosgModel& model,
                               const std::string& fixture,
                               const VerifyOptions& options) {
  const Criterion criterion = model.criterion;
  if (criterion != Criterion::kZeroSum && criterion != Criterion::kCommon) {
    throw PosgError("criterion mismatch: lipschitz suite needs zerosum or "
                    "common rewards");
  }
  const double c = model.reward_bound();
  double worst = 0.0;
  double tightest = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Rng rng(stream_seed(options.seed, k));
    const int t = rng.below(model.horizon);
    const auto a = sample_occupancy(model, t, rng, options.max_support);
    const auto b = sample_occupancy(model, t, rng, options.max_support);
    const double kappa =
        options.corrupt ? 0.0 : lipschitz_constant(model.discount, c,
                                                   model.horizon, t);
    const double dv =
        std::abs(solve_at(model, a.state, criterion, options.solve).values[0] -
                 solve_at(model, b.state, criterion, options.solve).values[0]);
    const double bound = kappa * l1_distance(a.state.entries, b.state.entries);
    worst = std::max(worst, dv - bound);
    if (bound > 0.0) tightest = std::max(tightest, dv / bound);
  }
  std::string kappas;
  for (int t = 0; t < model.horizon; ++t) {
    kappas += (t ? "," : "") +
              format_double(lipschitz_constant(model.discount, c,
                                               model.horizon, t));
  }
  return make_report("lipschitz", fixture, options.samples,
                     std::max(0.0, worst), options.solver_tolerance,
                     options.seed,
                     "norm=l1; kappa_t=" + kappas +
                         "; max ratio |dv|/bound=" + format_double(tightest));
}

bool is_known_suite(const std::string& name) {
  return name == "sufficiency" || name == "best-response" || name == "slave" ||
         name == "master" || name == "lipschitz" || name == "all";
}

std::vector<PropertyReport> run_suite(const PosgModel& model,
                                      const std::string& fixture,
                                      const std::vector<std::string>& suites,
                                      const VerifyOptions& options) {
  for (const auto& s : suites) {
    if (!is_known_suite(s)) throw std::invalid_argument("unknown suite '" + s + "'");
  }
  auto wants = [&](const char* name) {
    return std::find(suites.begin(), suites.end(), name) != suites.end() ||
           std::find(suites.begin(), suites.end(), "all") != suites.end();
  };
  std::vector<PropertyReport> out;
  VerifyOptions few = options;
  few.samples = std::max(1, options.samples / 10);
  VerifyOptions half = options;
  half.samples = std::max(1, options.samples / 2);

  if (wants("sufficiency")) {
    out.push_back(check_sufficiency_master(model, fixture, options));
    for (int i = 0; i < model.n_agents; ++i) {
      out.push_back(check_sufficiency_private(model, i, fixture, options));
    }
  }
  if (wants("best-response")) {
    for (int i = 0; i < model.n_agents; ++i) {
      out.push_back(check_best_response(model, i, fixture, few));
    }
  }
  if (wants("slave")) {
    for (int i = 0; i < model.n_agents; ++i) {
      Rng rng(stream_seed(options.seed, 1000003 + i));
      const JointPolicy others =
          random_joint_policy(model, model.horizon, rng, options.max_support);
      out.push_back(check_slave_structure(model, others, i, fixture, half));
    }
  }
  if (wants("master") && model.criterion != Criterion::kGeneral) {
    for (auto& r : check_master_structure(model, model.criterion, fixture, half)) {
      out.push_back(std::move(r));
    }
  }
  if (wants("lipschitz") && (model.criterion == Criterion::kZeroSum ||
                             model.criterion == Criterion::kCommon)) {
    out.push_back(check_lipschitz(model, fixture, half));
  }
  return out;
}

}  // namespace posg
