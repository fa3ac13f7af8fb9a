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
#include <stdexcept>

#include "doctest.h"
#include "posg/evaluate.hpp"
#include "posg/fixtures.hpp"
#include "posg/occupancy.hpp"
#include "posg/rng.hpp"
#include "support.hpp"

using namespace posg;
using posg::testing::fixture;

namespace {

// Expected discounted return by summing over every trajectory.
double trajectory_value(const PosgModel& m, const JointPolicy& pi, int agent,
                        const std::vector<HistoryCodec>& codecs, int t, int x,
                        const JointHistory& o) {
  if (t == m.horizon) return 0.0;
  double v = 0.0;
  for (int ja = 0; ja < m.num_joint_actions(); ++ja) {
    double pa = 1.0;
    for (int i = 0; i < m.n_agents; ++i) {
      pa *= pi[i].at(t, o[i])[m.agent_action(ja, i)];
    }
    if (pa == 0.0) continue;
    double future = 0.0;
    for (int y = 0; y < m.num_states(); ++y) {
      for (int jo = 0; jo < m.num_joint_obs(); ++jo) {
        const double q = m.T(ja, x, y) * m.O(ja, y, jo);
        if (q == 0.0) continue;
        future += q * trajectory_value(m, pi, agent, codecs, t + 1, y,
                                       extend(codecs, m, o, ja, jo));
      }
    }
    v += pa * (m.R(agent, x, ja) + m.discount * future);
  }
  return v;
}

double brute_value(const PosgModel& m, const JointPolicy& pi, int agent) {
  const auto codecs = history_codecs(m);
  double v = 0.0;
  for (int x = 0; x < m.num_states(); ++x) {
    if (m.start[x] > 0.0) {
      v += m.start[x] *
           trajectory_value(m, pi, agent, codecs, 0, x, empty_joint_history(m));
    }
  }
  return v;
}

JointPolicy pure_pair(const PosgModel& m, int horizon, int a0, int a1) {
  return to_joint_policy(
      {constant_tree(m, 0, horizon, a0), constant_tree(m, 1, horizon, a1)});
}

}  // namespace

TEST_CASE("one-stage tiger payoffs") {
  const PosgModel base = fixture("tiger-one-stage.posg");
  for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const PosgModel m = with_start(base, {b, 1.0 - b});
    const auto s = initial_occupancy(m);
    CHECK(evaluate_occupancy(m, pure_pair(m, 1, 0, 0), s, 0) == 1.0);
    CHECK(evaluate_occupancy(m, pure_pair(m, 1, 0, 1), s, 0) == 0.0);
    CHECK(evaluate_occupancy(m, pure_pair(m, 1, 1, 0), s, 0) == 0.0);
    CHECK(std::abs(evaluate_occupancy(m, pure_pair(m, 1, 1, 1), s, 0) -
                   (4 * b - 2)) <= 1e-12);
  }
}

TEST_CASE("history, occupancy and trajectory evaluations agree") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    RandomModelSpec spec;
    spec.horizon = 3;
    spec.public_obs = 1 + static_cast<int>(seed % 2);
    spec.discount = seed % 3 == 0 ? 1.0 : 0.9;
    const PosgModel m = random_model(spec, seed);
    Rng rng(seed + 100);
    const JointPolicy pi = random_joint_policy(m, m.horizon, rng);
    const auto s0 = initial_occupancy(m);
    for (int i = 0; i < m.n_agents; ++i) {
      const double brute = brute_value(m, pi, i);
      const auto tables = evaluate_history(m, pi, i);
      CHECK(std::abs(linear_eval(s0, tables[0]) - brute) <= 1e-9);
      CHECK(std::abs(evaluate_occupancy(m, pi, s0, i) - brute) <= 1e-9);
      CHECK(bellman_residual(m, pi, tables) <= 1e-9);
    }
  }
}

TEST_CASE("tables from a later occupancy state answer linear queries") {
  const PosgModel m = fixture("public-tiger.posg");
  Rng rng(2);
  const JointPolicy pi = random_joint_policy(m, m.horizon, rng);
  const auto s0 = initial_occupancy(m);
  for (const auto& b : step(m, s0, joint_rule_at(pi, 0))) {
    const auto tables = evaluate_history(m, pi, 0, b.next);
    CHECK(tables[0].values.empty());
    CHECK(std::abs(linear_eval(b.next, tables[1]) -
                   evaluate_occupancy(m, pi, b.next, 0)) <= 1e-9);
  }
}

TEST_CASE("a corrupted table has a Bellman residual") {
  const PosgModel m = fixture("tiger.posg");
  const JointPolicy pi = pure_pair(m, 2, 0, 0);
  auto tables = evaluate_history(m, pi, 0);
  tables[1].values.begin()->second += 0.5;
  CHECK(bellman_residual(m, pi, tables) >= 0.5 - 1e-12);
}

TEST_CASE("linear_eval reports missing entries and step mismatches") {
  const PosgModel m = fixture("tiger.posg");
  ValueTable table{0, 0, {}};
  const auto s0 = initial_occupancy(m);
  table.values[s0.entries.begin()->first] = 4.0;
  std::size_t missing = 0;
  CHECK(linear_eval(s0, table, &missing) == 2.0);
  CHECK(missing == 1);
  table.t = 1;
  CHECK_THROWS_AS(linear_eval(s0, table), std::invalid_argument);
}

TEST_CASE("simulation of a deterministic reward is exact") {
  const PosgModel m = fixture("minimal.posg");
  const JointPolicy pi = to_joint_policy({constant_tree(m, 0, 2, 0)});
  const SimResult r = simulate(m, pi, 1000, 5);
  CHECK(r.mean[0] == 2.0);
  CHECK(r.std_error[0] == 0.0);
  CHECK_THROWS_AS(simulate(m, pi, 0, 5), std::invalid_argument);
}

TEST_CASE("simulation is reproducible and consistent") {
  const PosgModel m = fixture("tiger.posg");
  Rng rng(8);
  const JointPolicy pi = random_joint_policy(m, m.horizon, rng);
  const SimResult a = simulate(m, pi, 20000, 8);
  const SimResult b = simulate(m, pi, 20000, 8);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const double exact = evaluate_occupancy(m, pi, initial_occupancy(m), 0);
  CHECK(std::abs(a.mean[0] - exact) <= 4 * a.std_error[0]);
}
