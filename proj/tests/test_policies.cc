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
#include <set>

#include "doctest.h"
#include "posg/error.hpp"
#include "posg/history.hpp"
#include "posg/policies.hpp"
#include "posg/rng.hpp"
#include "support.hpp"

using namespace posg;
using posg::testing::fixture;

TEST_CASE("history ids round-trip through steps") {
  const PosgModel m = fixture("tiger.posg");
  const HistoryCodec codec(m, 0);
  for (int t = 0; t <= 3; ++t) {
    const auto all = codec.all_of_length(t);
    CHECK(all.size() == static_cast<std::size_t>(std::pow(6, t)));
    for (HistoryId h : all) {
      CHECK(codec.length(h) == t);
      CHECK(codec.encode(codec.steps(h)) == h);
      if (t > 0) {
        const HistoryStep last = codec.last_step(h);
        CHECK(codec.child(codec.parent(h), last.action, last.obs) == h);
        CHECK(codec.prefix(h, t - 1) == codec.parent(h));
      }
    }
  }
}

TEST_CASE("history labels") {
  const PosgModel m = fixture("tiger.posg");
  const HistoryCodec codec(m, 0);
  CHECK(history_label(m, 0, HistoryCodec::root()) == "()");
  const HistoryId h = codec.child(codec.child(0, 0, 0), 0, 1);
  CHECK(history_label(m, 0, h) == "(listen hear-left)(listen hear-right)");
  CHECK(decode(m, 0, h).steps.size() == 2);
  CHECK(encode(m, decode(m, 0, h)) == h);
}

TEST_CASE("child ids overflow loudly") {
  const HistoryCodec codec(1000, 1000);
  HistoryId h = 0;
  CHECK_THROWS_AS(
      [&] {
        for (int k = 0; k < 10; ++k) h = codec.child(h, 999, 999);
      }(),
      std::overflow_error);
}

TEST_CASE("pure policy counts") {
  CHECK(pure_policy_count(3, 2, 1) == 3);
  CHECK(pure_policy_count(3, 2, 2) == 27);
  CHECK(pure_policy_count(3, 2, 3) == 2187);
  // Closed form |U|^((|Z|^h - 1) / (|Z| - 1)).
  for (int u = 1; u <= 3; ++u) {
    for (int z = 1; z <= 3; ++z) {
      for (int h = 1; h <= 3; ++h) {
        const double nodes =
            z == 1 ? h : (std::pow(z, h) - 1.0) / (z - 1.0);
        CHECK(pure_policy_count(u, z, h) ==
              static_cast<std::uint64_t>(std::llround(std::pow(u, nodes))));
      }
    }
  }
  CHECK(pure_policy_count(3, 2, 100) == UINT64_MAX);
}

TEST_CASE("enumeration is complete, distinct and indexed") {
  const PosgModel m = fixture("tiger.posg");
  const auto trees = enumerate_pure_policies(m, 0, 2);
  REQUIRE(trees.size() == 27);
  std::set<std::vector<int>> seen;
  for (std::size_t k = 0; k < trees.size(); ++k) {
    CHECK(trees[k].is_pure());
    CHECK(pure_tree_index(trees[k]) == k);
    std::vector<int> acts;
    for (int n = 0; n < trees[k].num_nodes(); ++n) {
      acts.push_back(trees[k].action_at(n));
    }
    seen.insert(acts);
  }
  CHECK(seen.size() == 27);
  // Node 0 is the most significant digit.
  CHECK(trees[9].action_at(0) == 1);
  CHECK(trees[1].action_at(2) == 1);
  CHECK_THROWS_AS(enumerate_pure_policies(m, 0, 3, 100), CapExceededError);
}

TEST_CASE("subtrees and decisions") {
  const PolicyTree t = pure_tree(0, 3, 2, 2, {0, 1, 0, 1, 1, 0, 0});
  const PolicyTree left = t.subtree(0);
  CHECK(left.horizon == 2);
  CHECK(left.action_at(0) == 1);
  CHECK(left.action_at(1) == 1);
  CHECK(left.action_at(2) == 1);
  const PolicyTree right = t.subtree(1);
  CHECK(right.action_at(0) == 0);
  CHECK(right.action_at(1) == 0);
  CHECK(right.action_at(2) == 0);
  const PrivateHistory h{0, {{0, 1}, {0, 0}}};
  CHECK(decision_at(t, h) == ActionDist{1.0, 0.0});
  // Action 1 at the root is off the tree.
  CHECK_THROWS_AS(decision_at(t, PrivateHistory{0, {{1, 1}}}),
                  UndefinedRuleError);
  CHECK_THROWS_AS(decision_at(t, PrivateHistory{0, {{0, 0}, {1, 0}, {0, 0}}}),
                  UndefinedRuleError);
}

TEST_CASE("to_policy and to_tree are inverse on pure trees") {
  const PosgModel m = fixture("tiger.posg");
  for (const auto& tree : enumerate_pure_policies(m, 1, 2)) {
    const Policy p = to_policy(tree);
    CHECK(p.horizon() == 2);
    CHECK(p.rules[0].choices.size() == 1);
    CHECK(p.rules[1].choices.size() == 2);
    const PolicyTree back = to_tree(p, 3, 2);
    CHECK(back.nodes == tree.nodes);
  }
}

TEST_CASE("policy JSON is deterministic") {
  const PosgModel m = fixture("tiger.posg");
  const PolicyTree t = constant_tree(m, 0, 2, 0);
  const std::string a = policy_to_json(m, t);
  CHECK(a == policy_to_json(m, t));
  CHECK(a.find("listen") != std::string::npos);
}

TEST_CASE("random policies cover every history with a distribution") {
  const PosgModel m = fixture("tiger.posg");
  Rng rng(11);
  const Policy p = random_policy(m, 0, 3, rng, 2);
  const HistoryCodec codec(m, 0);
  for (int t = 0; t < 3; ++t) {
    for (HistoryId h : codec.all_of_length(t)) {
      const ActionDist& d = p.at(t, h);
      double total = 0.0;
      int support = 0;
      for (double x : d) {
        CHECK(x >= 0.0);
        total += x;
        support += x > 0.0;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
      CHECK(support <= 2);
    }
  }
  CHECK_THROWS_AS(p.at(1, 0), UndefinedRuleError);
}

TEST_CASE("anchored policies re-root trees") {
  const PosgModel m = fixture("tiger.posg");
  const HistoryCodec codec(m, 0);
  const std::vector<HistoryId> anchors{codec.child(0, 0, 0),
                                       codec.child(0, 0, 1)};
  const Policy p = anchored_policy(
      0, 2, 1, anchors, {constant_tree(m, 0, 1, 1), constant_tree(m, 0, 1, 2)});
  CHECK(p.rules[0].choices.empty());
  CHECK(p.at(1, anchors[0]) == ActionDist{0.0, 1.0, 0.0});
  CHECK(p.at(1, anchors[1]) == ActionDist{0.0, 0.0, 1.0});
}

TEST_CASE("rng streams are reproducible") {
  Rng a(stream_seed(7, 3));
  Rng b(stream_seed(7, 3));
  for (int k = 0; k < 100; ++k) CHECK(a.uniform() == b.uniform());
  Rng c(5);
  for (int k = 0; k < 100; ++k) {
    const auto s = c.simplex(4);
    double total = 0.0;
    for (double x : s) total += x;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    const int j = c.below(3);
    CHECK((j >= 0 && j < 3));
  }
  CHECK(c.categorical({0.0, 1.0, 0.0}) == 1);
}
