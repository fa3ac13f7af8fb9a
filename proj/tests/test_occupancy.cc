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

#include <cmath>
#include <set>

#include "doctest.h"
#include "posg/error.hpp"
#include "posg/fixtures.hpp"
#include "posg/occupancy.hpp"
#include "posg/rng.hpp"
#include "support.hpp"

using namespace posg;
using posg::testing::fixture;

namespace {

DecisionRule constant_rule(const PosgModel& m, int agent, int t,
                           const std::vector<HistoryId>& histories,
                           int action) {
  DecisionRule r{agent, t, {}};
  ActionDist d(m.num_actions(agent), 0.0);
  d[action] = 1.0;
  for (HistoryId h : histories) r.choices[h] = d;
  return r;
}

JointDecisionRule listen_open_left(const PosgModel& m) {
  return {constant_rule(m, 0, 0, {0}, 0), constant_rule(m, 1, 0, {0}, 1)};
}

JointDecisionRule random_joint_rule(const PosgModel& m,
                                    const OccupancyState& s, Rng& rng) {
  JointDecisionRule a;
  for (int i = 0; i < m.n_agents; ++i) {
    std::vector<HistoryId> hs;
    for (const auto& [k, p] : s.entries) hs.push_back(k.history[i]);
    a.push_back(random_rule(m, i, s.t, hs, rng));
  }
  return a;
}

const char* kListenOpenLeft =
    "tiger-left,(listen hear-left),(open-left hear-left),0.125\n"
    "tiger-left,(listen hear-left),(open-left hear-right),0.125\n"
    "tiger-left,(listen hear-right),(open-left hear-left),0.125\n"
    "tiger-left,(listen hear-right),(open-left hear-right),0.125\n"
    "tiger-right,(listen hear-left),(open-left hear-left),0.125\n"
    "tiger-right,(listen hear-left),(open-left hear-right),0.125\n"
    "tiger-right,(listen hear-right),(open-left hear-left),0.125\n"
    "tiger-right,(listen hear-right),(open-left hear-right),0.125\n";

}  // namespace

TEST_CASE("listen and open-left from the uniform start") {
  const PosgModel m = fixture("tiger.posg");
  const auto branches = step(m, initial_occupancy(m), listen_open_left(m));
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].probability == doctest::Approx(1.0).epsilon(1e-12));
  const auto& next = branches[0].next;
  CHECK(next.t == 1);
  CHECK(next.entries.size() == 8);
  // 0.5 start * 0.5 reset * 0.25 observation, summed over both start states.
  for (const auto& [k, p] : next.entries) CHECK(std::abs(p - 0.125) <= 1e-12);
  CHECK(occupancy_to_csv(m, next.entries) == kListenOpenLeft);
}

TEST_CASE("decomposition onto agent 1's histories") {
  const PosgModel m = fixture("tiger.posg");
  const auto a = listen_open_left(m);
  const OccupancyState s = step(m, initial_occupancy(m), a)[0].next;
  const JointPolicy policy{Policy{0, {a[0]}}, Policy{1, {a[1]}}};
  const Mixture mix = decompose(m, s, policy, 0);
  REQUIRE(mix.components.size() == 2);
  for (const auto& c : mix.components) {
    CHECK(std::abs(c.weight - 0.5) <= 1e-12);
    CHECK(c.state.entries.size() == 4);
    for (const auto& [k, p] : c.state.entries) {
      CHECK(std::abs(p - 0.25) <= 1e-12);
      CHECK(k.history[0] == c.state.anchor);
    }
  }
  const OccupancyState back = recombine(mix);
  CHECK(max_abs_diff(back.entries, s.entries) == 0.0);
  CHECK(occupancy_to_csv(m, back.entries) == kListenOpenLeft);
}

TEST_CASE("both listen from the uniform start") {
  const PosgModel m = fixture("tiger.posg");
  const JointDecisionRule a{constant_rule(m, 0, 0, {0}, 0),
                            constant_rule(m, 1, 0, {0}, 0)};
  const OccupancyState s = step(m, initial_occupancy(m), a)[0].next;
  const HistoryCodec codec(m, 0);
  const HistoryId hl = codec.child(0, 0, 0);
  CHECK(s.entries.at({0, {hl, hl}}) == doctest::Approx(0.36125).epsilon(1e-12));
  CHECK(expected_reward(m, initial_occupancy(m), a, 0) == -2.0);
}

TEST_CASE("occupancy updates conserve mass on random models") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomModelSpec spec;
    spec.public_obs = 1 + static_cast<int>(seed % 2);
    spec.states = 2 + static_cast<int>(seed % 3);
    spec.horizon = 3;
    const PosgModel m = random_model(spec, seed);
    Rng rng(seed);
    OccupancyState s = initial_occupancy(m);
    for (int t = 0; t < 3; ++t) {
      const auto branches = step(m, s, random_joint_rule(m, s, rng));
      double omega = 0.0;
      for (const auto& b : branches) {
        omega += b.probability;
        CHECK(std::abs(b.next.total() - 1.0) <= 1e-9);
        CHECK(b.next.t == t + 1);
      }
      CHECK(std::abs(omega - 1.0) <= 1e-9);
      s = branches[rng.below(static_cast<int>(branches.size()))].next;
    }
  }
}

TEST_CASE("reward and public-observation probability are linear in s") {
  RandomModelSpec spec;
  spec.public_obs = 2;
  spec.horizon = 3;
  const PosgModel m = random_model(spec, 3);
  Rng rng(3);
  OccupancyState s = initial_occupancy(m);
  JointDecisionRule a = random_joint_rule(m, s, rng);
  const OccupancyState s1 = step(m, s, a)[0].next;
  OccupancyState s2 = s1;
  for (auto& [k, p] : s2.entries) p = rng.uniform() + 0.1;
  prune_and_normalize(s2.entries);
  // Rules over the union of both supports.
  a = random_joint_rule(m, s1, rng);
  for (double lambda : {0.1, 0.5, 0.9}) {
    const OccupancyState sm = mix(s1, s2, lambda);
    for (int i = 0; i < 2; ++i) {
      const double lin = lambda * expected_reward(m, s1, a, i) +
                         (1 - lambda) * expected_reward(m, s2, a, i);
      CHECK(std::abs(expected_reward(m, sm, a, i) - lin) <= 1e-12);
    }
    const auto b1 = step(m, s1, a);
    const auto b2 = step(m, s2, a);
    const auto bm = step(m, sm, a);
    REQUIRE(bm.size() == b1.size());
    for (std::size_t w = 0; w < bm.size(); ++w) {
      CHECK(std::abs(bm[w].probability -
                     (lambda * b1[w].probability +
                      (1 - lambda) * b2[w].probability)) <= 1e-12);
    }
  }
}

TEST_CASE("plan-time histories replay the step recursion") {
  const PosgModel m = fixture("public-tiger.posg");
  Rng rng(4);
  PlanTimeHistory y{m.start, {}, {}};
  OccupancyState s = initial_occupancy(m);
  for (int t = 0; t < 2; ++t) {
    const auto a = random_joint_rule(m, s, rng);
    const auto branches = step(m, s, a);
    const auto& b = branches.back();
    y.rules.push_back(a);
    y.public_obs.push_back(b.public_obs);
    s = b.next;
  }
  CHECK(approx_equal(occupancy_of(m, y).entries, s.entries));
}

TEST_CASE("factorize and recompose round-trip") {
  const PosgModel m = random_model(RandomModelSpec{}, 9);
  Rng rng(9);
  OccupancyState s = initial_occupancy(m);
  for (int t = 0; t < 2; ++t) s = step(m, s, random_joint_rule(m, s, rng))[0].next;
  for (int i = 0; i < 2; ++i) {
    const Factorization f = factorize(s, i);
    double total = 0.0;
    for (const auto& [h, w] : f.marginal.weights) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (const auto& [h, slice] : f.conditional.slices) {
      double mass = 0.0;
      for (const auto& [k, p] : slice) {
        mass += p;
        CHECK(k.history[i] == h);
      }
      CHECK(std::abs(mass - 1.0) <= 1e-12);
    }
    CHECK(max_abs_diff(recompose(f.marginal, f.conditional, s.t).entries,
                       s.entries) <= 1e-15);
  }
}

TEST_CASE("private update of a listening agent") {
  const PosgModel m = fixture("tiger.posg");
  const JointDecisionRule others{DecisionRule{0, 0, {}},
                                 constant_rule(m, 1, 0, {0}, 0)};
  const auto s0 = initial_private_occupancy(m, 0);
  const auto omega = private_obs_probabilities(m, s0, others, 0);
  CHECK(omega[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(omega[1] == doctest::Approx(0.5).epsilon(1e-12));
  const auto next = private_step(m, s0, others, 0, 0);
  CHECK(next.probability == doctest::Approx(0.5).epsilon(1e-12));
  double left = 0.0;
  for (const auto& [k, p] : next.next.entries) {
    if (k.state == 0) left += p;
  }
  CHECK(left == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(private_reward(m, s0, others, 0) == -2.0);
}

TEST_CASE("an impossible private observation throws") {
  const PosgModel m = fixture("onesided-tiger.posg");
  DecisionRule mine = constant_rule(m, 0, 0, {0}, 0);
  const auto s0 = initial_private_occupancy(m, 1);
  // Agent 2 cannot see "open-left-left" when agent 1 listens.
  const JointDecisionRule agent1_listens{mine, DecisionRule{1, 0, {}}};
  CHECK_THROWS_AS(private_step(m, s0, agent1_listens, 0, 2),
                  ZeroProbabilityError);
}

TEST_CASE("one-sided private occupancy collapses to a state belief") {
  const PosgModel m = fixture("onesided-tiger.posg");
  const HistoryCodec c1(m, 0);
  JointPolicy others{Policy{0, {}}, Policy{1, {}}};
  // Agent 2 waits at every history.
  const HistoryCodec c2(m, 1);
  for (int t = 0; t < m.horizon; ++t) {
    others[1].rules.push_back(
        constant_rule(m, 1, t, c2.all_of_length(t), 0));
  }
  const PrivateHistory h{0, {{0, 0}, {0, 0}}};
  const auto s = private_occupancy(m, others, h);
  // One joint history per state, so the entries are a belief over states.
  std::set<int> states;
  for (const auto& [k, p] : s.entries) CHECK(states.insert(k.state).second);
  // Two independent 0.85 / 0.15 signals.
  const double l = 0.85 * 0.85;
  const double r = 0.15 * 0.15;
  CHECK(s.entries.begin()->second == doctest::Approx(l / (l + r)).epsilon(1e-12));
}

TEST_CASE("occupancy helpers") {
  OccupancyMap a{{{0, {0}}, 0.5}, {{1, {0}}, 0.5}};
  OccupancyMap b{{{0, {0}}, 0.25}, {{2, {0}}, 0.75}};
  CHECK(max_abs_diff(a, b) == 0.75);
  CHECK(l1_distance(a, b) == 0.25 + 0.5 + 0.75);
  CHECK_FALSE(approx_equal(a, b));
  CHECK(approx_equal(a, a));
  // Pruning is relative to the total mass.
  OccupancyMap tiny{{{0, {0}}, 1e-13}, {{1, {0}}, 1.0}};
  prune_and_normalize(tiny);
  CHECK(tiny.size() == 1);
  CHECK(tiny.begin()->second == 1.0);
  OccupancyMap empty{{{0, {0}}, 0.0}};
  CHECK_THROWS_AS(prune_and_normalize(empty), ZeroProbabilityError);
  CHECK_THROWS(mix(OccupancyState{0, a}, OccupancyState{1, b}, 0.5));
}
