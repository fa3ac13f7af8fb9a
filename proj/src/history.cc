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

#include "posg/history.hpp"

#include <limits>
#include <stdexcept>

namespace posg {

HistoryCodec::HistoryCodec(int num_actions, int num_obs)
    : num_actions_(num_actions),
      num_obs_(num_obs),
      branching_(static_cast<std::uint64_t>(num_actions) * num_obs) {
  if (num_actions < 1 || num_obs < 1) {
    throw std::invalid_argument("history codec needs nonempty U and Z");
  }
}

HistoryCodec::HistoryCodec(const PosgModel& model, int agent)
    : HistoryCodec(model.num_actions(agent), model.num_agent_obs(agent)) {}

HistoryId HistoryCodec::child(HistoryId h, int action, int obs) const {
  if (action < 0 || action >= num_actions_ || obs < 0 || obs >= num_obs_) {
    throw std::out_of_range("history step out of range");
  }
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (h > (kMax - branching_) / branching_) {
    throw std::overflow_error("history id overflow");
  }
  return h * branching_ + 1 +
         static_cast<std::uint64_t>(action) * num_obs_ + obs;
}

HistoryStep HistoryCodec::last_step(HistoryId h) const {
  if (h == 0) throw std::invalid_argument("empty history has no last step");
  const std::uint64_t slot = (h - 1) % branching_;
  return {static_cast<int>(slot / num_obs_), static_cast<int>(slot % num_obs_)};
}

int HistoryCodec::length(HistoryId h) const {
  int t = 0;
  while (h != 0) {
    h = parent(h);
    ++t;
  }
  return t;
}

HistoryId HistoryCodec::prefix(HistoryId h, int t) const {
  int len = length(h);
  if (t > len) throw std::invalid_argument("prefix longer than history");
  while (len > t) {
    h = parent(h);
    --len;
  }
  return h;
}

std::vector<HistoryStep> HistoryCodec::steps(HistoryId h) const {
  std::vector<HistoryStep> out;
  while (h != 0) {
    out.push_back(last_step(h));
    h = parent(h);
  }
  return {out.rbegin(), out.rend()};
}

HistoryId HistoryCodec::encode(const std::vector<HistoryStep>& steps) const {
  HistoryId h = root();
  for (const auto& s : steps) h = child(h, s.action, s.obs);
  return h;
}

std::vector<HistoryId> HistoryCodec::all_of_length(int t) const {
  std::vector<HistoryId> layer{root()};
  for (int k = 0; k < t; ++k) {
    std::vector<HistoryId> next;
    next.reserve(layer.size() * branching_);
    for (HistoryId h : layer) {
      for (int u = 0; u < num_actions_; ++u) {
        for (int z = 0; z < num_obs_; ++z) next.push_back(child(h, u, z));
      }
    }
    layer = std::move(next);
  }
  return layer;
}

std::vector<HistoryCodec> history_codecs(const PosgModel& model) {
  std::vector<HistoryCodec> out;
  for (int i = 0; i < model.n_agents; ++i) out.emplace_back(model, i);
  return out;
}

PrivateHistory decode(const PosgModel& model, int agent, HistoryId h) {
  return {agent, HistoryCodec(model, agent).steps(h)};
}

HistoryId encode(const PosgModel& model, const PrivateHistory& history) {
  return HistoryCodec(model, history.agent).encode(history.steps);
}

std::string history_label(const PosgModel& model, int agent, HistoryId h) {
  const auto steps = HistoryCodec(model, agent).steps(h);
  if (steps.empty()) return "()";
  std::string out;
  for (const auto& s : steps) {
    out += "(" + model.actions[agent][s.action] + " " +
           model.agent_obs_label(agent, s.obs) + ")";
  }
  return out;
}

JointHistory empty_joint_history(const PosgModel& model) {
  return JointHistory(model.n_agents, HistoryCodec::root());
}

JointHistory extend(const std::vector<HistoryCodec>& codecs,
                    const PosgModel& model, const JointHistory& o, int ja,
                    int jo) {
  JointHistory out(o.size());
  for (int i = 0; i < model.n_agents; ++i) {
    out[i] = codecs[i].child(o[i], model.agent_action(ja, i),
                             model.agent_obs(jo, i));
  }
  return out;
}

}  // namespace posg
