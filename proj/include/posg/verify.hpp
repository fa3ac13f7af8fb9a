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

#ifndef POSG_VERIFY_HPP_
#define POSG_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "posg/model.hpp"
#include "posg/occupancy.hpp"
#include "posg/policies.hpp"
#include "posg/rng.hpp"
#include "posg/solve.hpp"

namespace posg {

struct PropertyReport {
  std::string property;
  std::string fixture;
  int samples = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::string notes;
  // Diagnostics measure a quantity expected to be strictly positive and
  // pass exactly when it is; for them max_violation holds the measurement.
  bool diagnostic = false;

  // One JSON object on a single line.
  std::string to_json() const;
};

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 0;
  // Exact identities (sufficiency, mixtures, linearity).
  double exact_tolerance = 1e-9;
  // Solver mediated inequalities (convexity, Lipschitz, certificates).
  double solver_tolerance = 1e-6;
  // Belief grid of the two-state certificate and probe.
  int grid = 101;
  // Support size of sampled decision rules; 0 means every action.
  int max_support = 2;
  // Runs the check against a deliberately corrupted computation.
  bool corrupt = false;
  SolveOptions solve;
};

// kappa_t = c (1 - gamma^(l - t)) / (1 - gamma), or (l - t) c at gamma = 1.
double lipschitz_constant(double gamma, double c, int horizon, int t);

struct OccupancySample {
  std::vector<double> start;
  OccupancyState state;
  // Decision rules that produced the state (horizon t per agent).
  JointPolicy generator;
};

// Random start belief, random decision rules and sampled public
// observations up to step t. When `others` is given, every agent except
// `free_agent` follows it instead of random rules.
OccupancySample sample_occupancy(const PosgModel& model, int t, Rng& rng,
                                 int max_support,
                                 const JointPolicy* others = nullptr,
                                 int free_agent = -1);

// Occupancy-based r, omega and rho against a direct expectation over
// model trajectories conditioned on the plan-time history.
PropertyReport check_sufficiency_master(const PosgModel& model,
                                        const std::string& fixture,
                                        const VerifyOptions& options);

// Private occupancy r^i, omega^i and rho^i against trajectories
// conditioned on agent i's own history.
PropertyReport check_sufficiency_private(const PosgModel& model, int agent,
                                         const std::string& fixture,
                                         const VerifyOptions& options);

// best_response_history against best_response_private for random other
// policies: values, and the chosen actions.
PropertyReport check_best_response(const PosgModel& model, int agent,
                                   const std::string& fixture,
                                   const VerifyOptions& options);

// Linearity of the slave value over mixtures of agent i's private
// occupancy states, and the PWLC certificate: the value equals the best
// linear evaluation over agent i's enumerated pure continuations.
PropertyReport check_slave_structure(const PosgModel& model,
                                     const JointPolicy& others, int agent,
                                     const std::string& fixture,
                                     const VerifyOptions& options);

// Structural properties of the optimal value for `criterion`; one report
// per property.
std::vector<PropertyReport> check_master_structure(
    const PosgModel& model, Criterion criterion, const std::string& fixture,
    const VerifyOptions& options);

// |v(s) - v(s')| <= kappa_t |s - s'|_1 on random same-step pairs.
PropertyReport check_lipschitz(const PosgModel& model,
                               const std::string& fixture,
                               const VerifyOptions& options);

// Suites: sufficiency, best-response, slave, master, lipschitz, all.
// Suites that do not apply to the model's criterion are skipped. Throws
// std::invalid_argument naming an unknown suite.
std::vector<PropertyReport> run_suite(const PosgModel& model,
                                      const std::string& fixture,
                                      const std::vector<std::string>& suites,
                                      const VerifyOptions& options);

bool is_known_suite(const std::string& name);

}  // namespace posg

#endif  // POSG_VERIFY_HPP_
