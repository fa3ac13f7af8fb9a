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

#ifndef POSG_EVALUATE_HPP_
#define POSG_EVALUATE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "posg/model.hpp"
#include "posg/occupancy.hpp"
#include "posg/policies.hpp"

namespace posg {

// upsilon^{i, a_{t:}}(x, o) for every reachable (x, o) at step t.
struct ValueTable {
  int agent = 0;
  int t = 0;
  std::map<OccupancyKey, double> values;
};

// Backward induction over the histories reachable under `policy` from the
// support of `from`. Element t of the result is the table at step t, for
// t = from.t .. horizon; earlier elements are empty. The table at the
// horizon is identically zero.
std::vector<ValueTable> evaluate_history(const PosgModel& model,
                                         const JointPolicy& policy, int agent,
                                         const OccupancyState& from);
// Same from step 0, seeded with every state (not only the support of the
// start belief) so the tables also answer point-mass queries.
std::vector<ValueTable> evaluate_history(const PosgModel& model,
                                         const JointPolicy& policy, int agent);

// Value of `policy` from s through the occupancy-state recursion
// V(s) = r(s, a_t) + gamma * sum_w omega(w | s, a_t) V(rho(s, a_t, w)).
double evaluate_occupancy(const PosgModel& model, const JointPolicy& policy,
                          const OccupancyState& s, int agent);

// sum_{x,o} s(x, o) * table(x, o). Entries missing from the table count as
// zero; their number is written to `missing` when given. Throws
// std::invalid_argument on a step mismatch.
double linear_eval(const OccupancyState& s, const ValueTable& table,
                   std::size_t* missing = nullptr);

// Largest |v_t(x,o) - (r + gamma * E v_{t+1})| over every table entry.
double bellman_residual(const PosgModel& model, const JointPolicy& policy,
                        const std::vector<ValueTable>& tables);

struct SimResult {
  std::int64_t episodes = 0;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of the discounted return of every agent. Episode k
// draws from Rng(stream_seed(seed, k)).
SimResult simulate(const PosgModel& model, const JointPolicy& policy,
                   std::int64_t episodes, std::uint64_t seed);

}  // namespace posg

#endif  // POSG_EVALUATE_HPP_
