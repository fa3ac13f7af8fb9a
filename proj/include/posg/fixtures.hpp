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

#ifndef POSG_FIXTURES_HPP_
#define POSG_FIXTURES_HPP_

#include <cstdint>

#include "posg/model.hpp"

namespace posg {

struct RandomModelSpec {
  int n_agents = 2;
  int states = 2;
  int actions = 2;
  int private_obs = 2;
  int public_obs = 1;
  int horizon = 2;
  double discount = 1.0;
  // zerosum and common shape the reward tables; anything else draws every
  // agent's table independently.
  Criterion criterion = Criterion::kGeneral;
};

// Dense random model: transition, observation and start rows are random
// points of the simplex, rewards uniform in [-1, 1]. Deterministic in seed.
PosgModel random_model(const RandomModelSpec& spec, std::uint64_t seed);

}  // namespace posg

#endif  // POSG_FIXTURES_HPP_
