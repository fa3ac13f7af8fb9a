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

#ifndef POSG_OCCUPANCY_HPP_
#define POSG_OCCUPANCY_HPP_

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "posg/history.hpp"
#include "posg/model.hpp"
#include "posg/policies.hpp"

namespace posg {

// Entries below this mass are dropped after every update.
inline constexpr double kPruneThreshold = 1e-12;
// Pointwise tolerance of occupancy equality.
inline constexpr double kOccupancyTolerance = 1e-9;

struct OccupancyKey {
  int state;
  JointHistory history;
  auto operator<=>(const OccupancyKey&) const = default;
};

using OccupancyMap = std::map<OccupancyKey, double>;

// Distribution over (hidden state, joint history) at step t, ordered by
// (state id, history ids).
struct OccupancyState {
  int t = 0;
  OccupancyMap entries;

  double total() const;
};

// Identical support and max pointwise difference <= tol.
bool approx_equal(const OccupancyMap& a, const OccupancyMap& b,
                  double tol = kOccupancyTolerance);
// Max pointwise difference over the union of supports.
double max_abs_diff(const OccupancyMap& a, const OccupancyMap& b);
// 1-norm over the union of supports.
double l1_distance(const OccupancyMap& a, const OccupancyMap& b);
// lambda * a + (1 - lambda) * b. Both must share t.
OccupancyState mix(const OccupancyState& a, const OccupancyState& b,
                   double lambda);
// Drops entries below kPruneThreshold and rescales to total mass 1. Throws
// ZeroProbabilityError when nothing is left.
void prune_and_normalize(OccupancyMap& entries);

OccupancyState initial_occupancy(const PosgModel& model);

struct OccupancyBranch {
  int public_obs;
  double probability;  // omega(w | s, a)
  OccupancyState next;
};

// One branch per public observation with positive probability, in
// increasing w.
std::vector<OccupancyBranch> step(const PosgModel& model,
                                  const OccupancyState& s,
                                  const JointDecisionRule& a);

double expected_reward(const PosgModel& model, const OccupancyState& s,
                       const JointDecisionRule& a, int agent);

// Occupancy state reached along a plan-time history. Throws
// ZeroProbabilityError when a public observation has probability zero.
OccupancyState occupancy_of(const PosgModel& model, const PlanTimeHistory& y);

struct MarginalOccupancy {
  int agent = 0;
  std::map<HistoryId, double> weights;
};

// For every private history of agent i, the distribution over (state,
// joint history) given that history. Keys keep the full joint history so
// recomposition is a direct product.
struct ConditionalOccupancy {
  int agent = 0;
  std::map<HistoryId, OccupancyMap> slices;
};

struct Factorization {
  MarginalOccupancy marginal;
  ConditionalOccupancy conditional;
};

Factorization factorize(const OccupancyState& s, int agent);
OccupancyState recompose(const MarginalOccupancy& m,
                         const ConditionalOccupancy& c, int t);

// Distribution over (state, joint history) given agent i's history `anchor`
// and the others' fixed policy. Every key's i-component equals the anchor.
struct PrivateOccupancyState {
  int agent = 0;
  int t = 0;
  HistoryId anchor = 0;
  OccupancyMap entries;
};

// s^i_0: the start belief attached to empty histories.
PrivateOccupancyState initial_private_occupancy(const PosgModel& model,
                                                int agent);

struct PrivateTransition {
  double probability;  // omega^i(z^i | s^i, a^{-i}, u^i)
  PrivateOccupancyState next;
};

// Agent i plays u_i and then receives z_i (an index into Z^i). Only the
// others' entries of `others_rule` are read. Throws ZeroProbabilityError
// when z_i has probability zero.
PrivateTransition private_step(const PosgModel& model,
                               const PrivateOccupancyState& s,
                               const JointDecisionRule& others_rule, int u_i,
                               int z_i);
// omega^i(z | s^i, a^{-i}, u_i) for every z, without normalizing.
std::vector<double> private_obs_probabilities(
    const PosgModel& model, const PrivateOccupancyState& s,
    const JointDecisionRule& others_rule, int u_i);

double private_reward(const PosgModel& model, const PrivateOccupancyState& s,
                      const JointDecisionRule& others_rule, int u_i);

// Runs private_step along `history` from the model's start belief.
PrivateOccupancyState private_occupancy(const PosgModel& model,
                                        const JointPolicy& others,
                                        const PrivateHistory& history);
PrivateOccupancyState private_occupancy(const PosgModel& model,
                                        const PrivatePlanTimeHistory& y);

struct MixtureComponent {
  double weight;
  PrivateOccupancyState state;
};

struct Mixture {
  int agent = 0;
  int t = 0;
  std::vector<MixtureComponent> components;
};

// Mixture of agent i's private occupancy states whose weights are the
// marginal of s. `policy` is the joint policy that generated s from the
// model's start belief; only the others' components are read. Throws
// PosgError("inconsistent occupancy") when the recombination differs from s
// by more than kOccupancyTolerance.
Mixture decompose(const PosgModel& model, const OccupancyState& s,
                  const JointPolicy& policy, int agent);
OccupancyState recombine(const Mixture& mixture);

// Rows "state,history_1,...,history_n,probability" in canonical order.
std::string occupancy_to_csv(const PosgModel& model, const OccupancyMap& m);
// Indented text tree grouped by agent 1's history, then the others.
std::string occupancy_to_tree(const PosgModel& model, const OccupancyMap& m);

}  // namespace posg

#endif  // POSG_OCCUPANCY_HPP_
