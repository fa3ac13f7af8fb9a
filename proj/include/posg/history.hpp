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

#ifndef POSG_HISTORY_HPP_
#define POSG_HISTORY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "posg/model.hpp"

namespace posg {

// Integer id of one agent's private history. Ids index a complete tree with
// branching |U^i| * |Z^i| in breadth-first order: the empty history is 0 and
// appending (u, z) to h gives h * b + 1 + u * |Z^i| + z. Ids are therefore
// canonical without an interning table.
using HistoryId = std::uint64_t;

// One id per agent, all of the same length.
using JointHistory = std::vector<HistoryId>;

struct HistoryStep {
  int action;
  int obs;  // index into Z^i = W x Z~^i
  bool operator==(const HistoryStep&) const = default;
};

struct PrivateHistory {
  int agent = 0;
  std::vector<HistoryStep> steps;

  int length() const { return static_cast<int>(steps.size()); }
  bool operator==(const PrivateHistory&) const = default;
};

class HistoryCodec {
 public:
  HistoryCodec(int num_actions, int num_obs);
  HistoryCodec(const PosgModel& model, int agent);

  static constexpr HistoryId root() { return 0; }
  // Throws std::overflow_error when the id no longer fits in 64 bits.
  HistoryId child(HistoryId h, int action, int obs) const;
  HistoryId parent(HistoryId h) const { return (h - 1) / branching_; }
  HistoryStep last_step(HistoryId h) const;
  int length(HistoryId h) const;
  // The length-t prefix of h.
  HistoryId prefix(HistoryId h, int t) const;

  std::vector<HistoryStep> steps(HistoryId h) const;
  HistoryId encode(const std::vector<HistoryStep>& steps) const;

  // Every history of exactly length t, in increasing id order.
  std::vector<HistoryId> all_of_length(int t) const;

  int num_actions() const { return num_actions_; }
  int num_obs() const { return num_obs_; }

 private:
  int num_actions_;
  int num_obs_;
  std::uint64_t branching_;
};

std::vector<HistoryCodec> history_codecs(const PosgModel& model);

PrivateHistory decode(const PosgModel& model, int agent, HistoryId h);
HistoryId encode(const PosgModel& model, const PrivateHistory& history);

// "(listen hear-left)(listen hear-right)"; the empty history prints as "()".
std::string history_label(const PosgModel& model, int agent, HistoryId h);

// Joint history of n empty private histories.
JointHistory empty_joint_history(const PosgModel& model);

// Appends (u^i, z^i) to every component.
JointHistory extend(const std::vector<HistoryCodec>& codecs,
                    const PosgModel& model, const JointHistory& o, int ja,
                    int jo);

}  // namespace posg

#endif  // POSG_HISTORY_HPP_
