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
#include "posg/error.hpp"
#include "posg/fixtures.hpp"
#include "posg/verify.hpp"
#include "support.hpp"

using namespace posg;
using posg::testing::fixture;

namespace {

VerifyOptions options(int samples, std::uint64_t seed, bool corrupt = false) {
  VerifyOptions o;
  o.samples = samples;
  o.seed = seed;
  o.corrupt = corrupt;
  return o;
}

JointPolicy always(const PosgModel& m, int action) {
  std::vector<PolicyTree> trees;
  for (int i = 0; i < m.n_agents; ++i) {
    trees.push_back(constant_tree(m, i, m.horizon, action));
  }
  return to_joint_policy(trees);
}

void check_consistent(const PropertyReport& r) {
  if (!r.diagnostic) CHECK(r.passed == (r.max_violation <= r.tolerance));
}

}  // namespace

TEST_CASE("Lipschitz constants") {
  CHECK(lipschitz_constant(0.9, 2.0, 3, 0) == doctest::Approx(5.42).epsilon(1e-12));
  CHECK(lipschitz_constant(1.0, 2.0, 3, 1) == 4.0);
  CHECK(lipschitz_constant(0.5, 1.0, 3, 3) == 0.0);
}

TEST_CASE("master sufficiency") {
  const auto tiger = check_sufficiency_master(fixture("tiger.posg"), "tiger", options(100, 1));
  CHECK(tiger.passed);
  CHECK(tiger.samples == 100);
  CHECK(tiger.max_violation <= 1e-9);
  const auto one = check_sufficiency_master(fixture("minimal.posg"), "minimal", options(20, 1));
  CHECK(one.max_violation == 0.0);
  const auto bad = check_sufficiency_master(fixture("tiger.posg"), "tiger", options(10, 1, true));
  CHECK_FALSE(bad.passed);
  check_consistent(bad);
}

TEST_CASE("private sufficiency") {
  CHECK(check_sufficiency_private(fixture("tiger.posg"), 0, "tiger", options(100, 2)).passed);
  const PosgModel onesided = fixture("onesided-tiger.posg");
  for (int i = 0; i < 2; ++i) {
    CHECK(check_sufficiency_private(onesided, i, "onesided", options(50, 2))
              .max_violation <= 1e-9);
  }
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    RandomModelSpec spec;
    spec.public_obs = 2;
    spec.horizon = 3;
    const PosgModel m = random_model(spec, seed);
    CHECK(check_sufficiency_private(m, 1, "random", options(30, seed)).passed);
  }
  CHECK_FALSE(check_sufficiency_private(fixture("tiger.posg"), 0, "tiger",
                                        options(5, 2, true))
                  .passed);
}

TEST_CASE("best-response cross-check") {
  for (int horizon : {1, 2}) {
    const PosgModel m = with_horizon(fixture("tiger.posg"), horizon);
    for (int i = 0; i < 2; ++i) {
      CHECK(check_best_response(m, i, "tiger", options(10, 3)).passed);
    }
  }
  CHECK_FALSE(check_best_response(fixture("tiger.posg"), 0, "tiger",
                                  options(2, 3, true))
                  .passed);
}

TEST_CASE("slave structure") {
  const PosgModel m = fixture("tiger.posg");
  const auto r = check_slave_structure(m, always(m, 0), 0, "tiger", options(50, 4));
  CHECK(r.passed);
  check_consistent(r);
  const PosgModel one_step = with_horizon(m, 1);
  CHECK(check_slave_structure(one_step, always(one_step, 0), 0, "tiger",
                              options(5, 4))
            .max_violation <= 1e-12);
  CHECK_FALSE(check_slave_structure(m, always(m, 0), 0, "tiger",
                                    options(3, 4, true))
                  .passed);
}

TEST_CASE("master structure on the one-stage tiger") {
  const PosgModel zs = fixture("tiger-one-stage.posg");
  const auto reports = check_master_structure(zs, Criterion::kZeroSum, "one-stage",
                                              options(20, 5));
  bool probed = false;
  for (const auto& r : reports) {
    check_consistent(r);
    if (r.property == "zs-standard-basis-gap") {
      probed = true;
      CHECK(r.diagnostic);
      // Grid triple (0.5, 0.75, 1): 0.5 against the chord (0 + 2/3) / 2.
      CHECK(r.max_violation >= 1.0 / 6.0 - 1e-9);
    } else {
      CHECK(r.passed);
    }
  }
  CHECK(probed);
  const PosgModel dec = with_criterion(zs, Criterion::kCommon);
  for (const auto& r : check_master_structure(dec, Criterion::kCommon, "one-stage",
                                              options(20, 5))) {
    CHECK(r.passed);
  }
  CHECK_THROWS_AS(check_master_structure(dec, Criterion::kZeroSum, "one-stage",
                                         options(2, 5)),
                  PosgError);
}

TEST_CASE("master structure faults are caught") {
  const PosgModel zs = fixture("tiger.posg");
  for (const auto& r : check_master_structure(zs, Criterion::kCommon, "tiger",
                                              options(20, 6, true))) {
    CHECK_FALSE(r.passed);
  }
  const PosgModel st = fixture("st-2x2.posg");
  for (const auto& r : check_master_structure(st, Criterion::kStackelberg,
                                              "st", options(20, 6))) {
    CHECK(r.passed);
  }
  for (const auto& r : check_master_structure(st, Criterion::kStackelberg,
                                              "st", options(20, 6, true))) {
    CHECK_FALSE(r.passed);
  }
}

TEST_CASE("Lipschitz suite") {
  const PosgModel zs = with_criterion(fixture("tiger.posg"), Criterion::kZeroSum);
  const auto r = check_lipschitz(zs, "tiger", options(30, 7));
  CHECK(r.passed);
  CHECK(r.notes.find("kappa_t=202,101") != std::string::npos);
  CHECK_FALSE(check_lipschitz(zs, "tiger", options(30, 7, true)).passed);
  CHECK_THROWS_AS(check_lipschitz(fixture("st-2x2.posg"), "st", options(2, 7)),
                  PosgError);
}

TEST_CASE("suite selection") {
  const PosgModel m = fixture("tiger.posg");
  CHECK(run_suite(m, "tiger", {}, options(10, 7)).empty());
  CHECK_THROWS_AS(run_suite(m, "tiger", {"bogus"}, options(10, 7)),
                  std::invalid_argument);
  const auto a = run_suite(m, "tiger", {"all"}, options(40, 7));
  const auto b = run_suite(m, "tiger", {"all"}, options(40, 7));
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].passed);
    CHECK(a[k].to_json() == b[k].to_json());
  }
  const auto only = run_suite(m, "tiger", {"sufficiency"}, options(10, 7));
  CHECK(only.size() == 3);
}

TEST_CASE("corrupted convexity checks fail for every seed") {
  const PosgModel tiger = fixture("tiger.posg");
  const PosgModel zs = with_criterion(tiger, Criterion::kZeroSum);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const auto& r : check_master_structure(tiger, Criterion::kCommon,
                                                "tiger", options(5, seed, true))) {
      CHECK_FALSE(r.passed);
    }
    for (const auto& r : check_master_structure(zs, Criterion::kZeroSum,
                                                "tiger", options(5, seed, true))) {
      if (!r.diagnostic) CHECK_FALSE(r.passed);
    }
  }
}
