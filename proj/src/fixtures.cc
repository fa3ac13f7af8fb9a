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

#include "posg/fixtures.hpp"

#include <string>

#include "posg/rng.hpp"

namespace posg {

PosgModel random_model(const RandomModelSpec& spec, std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  PosgModel m;
  m.n_agents = spec.n_agents;
  for (int x = 0; x < spec.states; ++x) m.states.push_back("s" + std::to_string(x));
  m.actions.resize(spec.n_agents);
  m.private_obs.resize(spec.n_agents);
  for (int i = 0; i < spec.n_agents; ++i) {
    for (int u = 0; u < spec.actions; ++u) {
      m.actions[i].push_back("a" + std::to_string(u));
    }
    for (int z = 0; z < spec.private_obs; ++z) {
      m.private_obs[i].push_back("z" + std::to_string(z));
    }
  }
  m.public_obs.clear();
  for (int w = 0; w < spec.public_obs; ++w) {
    m.public_obs.push_back(spec.public_obs == 1 ? "none"
                                                : "w" + std::to_string(w));
  }
  m.horizon = spec.horizon;
  m.discount = spec.discount;
  m.finalize();
  const int nx = m.num_states();
  for (int ja = 0; ja < m.num_joint_actions(); ++ja) {
    for (int x = 0; x < nx; ++x) {
      const auto row = rng.simplex(nx);
      for (int y = 0; y < nx; ++y) m.T_ref(ja, x, y) = row[y];
    }
    for (int y = 0; y < nx; ++y) {
      const auto row = rng.simplex(m.num_joint_obs());
      for (int jo = 0; jo < m.num_joint_obs(); ++jo) m.O_ref(ja, y, jo) = row[jo];
    }
  }
  for (int i = 0; i < m.n_agents; ++i) {
    for (double& r : m.rewards[i]) r = 2.0 * rng.uniform() - 1.0;
  }
  if (spec.criterion == Criterion::kZeroSum && m.n_agents == 2) {
    for (std::size_t k = 0; k < m.rewards[0].size(); ++k) {
      m.rewards[1][k] = -m.rewards[0][k];
    }
  } else if (spec.criterion == Criterion::kCommon) {
    for (int i = 1; i < m.n_agents; ++i) m.rewards[i] = m.rewards[0];
  }
  m.rewards_declared.assign(m.n_agents, true);
  m.start = rng.simplex(nx);
  if (spec.criterion != Criterion::kGeneral) {
    m.declared_criterion = spec.criterion;
  }
  validate(m);
  return m;
}

}  // namespace posg
