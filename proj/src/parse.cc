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

#include "posg/parse.hpp"

#include <cctype>
#include <charconv>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "posg/error.hpp"

namespace posg {
namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Splits `line` on whitespace starting at `from`, stopping at `until`.
std::vector<Token> split_words(const std::string& line, std::size_t from,
                               std::size_t until) {
  std::vector<Token> out;
  std::size_t k = from;
  while (k < until) {
    while (k < until && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k >= until) break;
    const std::size_t begin = k;
    while (k < until && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    out.push_back({line.substr(begin, k - begin), static_cast<int>(begin) + 1});
  }
  return out;
}

// Colon separated segments, each a list of words.
std::vector<std::vector<Token>> split_segments(const std::string& line,
                                               std::size_t from) {
  std::vector<std::vector<Token>> out;
  std::size_t begin = from;
  while (true) {
    const std::size_t colon = line.find(':', begin);
    const std::size_t end = colon == std::string::npos ? line.size() : colon;
    out.push_back(split_words(line, begin, end));
    if (colon == std::string::npos) break;
    begin = colon + 1;
  }
  return out;
}

double parse_number(const Token& token, int line) {
  double value = 0.0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, token.column,
                     "expected a number, got '" + token.text + "'");
  }
  return value;
}

int parse_int(const Token& token, int line) {
  int value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, token.column,
                     "expected an integer, got '" + token.text + "'");
  }
  return value;
}

std::vector<int> resolve(const Token& token,
                         const std::vector<std::string>& labels,
                         const char* what, int line) {
  std::vector<int> out;
  if (token.text == "*") {
    for (int k = 0; k < static_cast<int>(labels.size()); ++k) out.push_back(k);
    return out;
  }
  for (int k = 0; k < static_cast<int>(labels.size()); ++k) {
    if (labels[k] == token.text) return {k};
  }
  const bool numeric =
      !token.text.empty() &&
      std::all_of(token.text.begin(), token.text.end(),
                  [](unsigned char c) { return std::isdigit(c) != 0; });
  if (numeric) {
    const int k = parse_int(token, line);
    if (k < static_cast<int>(labels.size())) return {k};
  }
  throw ParseError(line, token.column,
                   std::string("unknown ") + what + " label '" + token.text +
                       "'");
}

// Calls fn(index tuple) for every element of the cartesian product.
template <typename Fn>
void for_each_product(const std::vector<std::vector<int>>& slots, Fn&& fn) {
  std::vector<int> pos(slots.size(), 0);
  std::vector<int> value(slots.size());
  while (true) {
    for (std::size_t k = 0; k < slots.size(); ++k) value[k] = slots[k][pos[k]];
    fn(value);
    std::size_t k = slots.size();
    while (k > 0) {
      --k;
      if (++pos[k] < static_cast<int>(slots[k].size())) break;
      pos[k] = 0;
      if (k == 0) return;
    }
    if (slots.empty()) return;
  }
}

class Parser {
 public:
  PosgModel run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no_;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (split_words(raw, 0, raw.size()).empty()) continue;
      handle_line(raw);
    }
    if (pending_rows_ > 0) {
      throw ParseError(line_no_, 0,
                       "dimension mismatch: expected " +
                           std::to_string(pending_rows_) + " more " +
                           pending_what_ + " lines");
    }
    ensure_finalized(line_no_);
    if (!have_start_) throw ParseError(line_no_, 0, "missing 'start' line");
    derive_rewards();
    validate(model_);
    return std::move(model_);
  }

 private:
  void handle_line(const std::string& line) {
    if (pending_rows_ > 0 && line.find(':') == std::string::npos) {
      add_list_row(split_words(line, 0, line.size()));
      return;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(line_no_, 1, "expected '<keyword>:'");
    }
    if (pending_rows_ > 0) {
      throw ParseError(line_no_, 1,
                       "dimension mismatch: expected " +
                           std::to_string(pending_rows_) + " more " +
                           pending_what_ + " lines");
    }
    const auto key_words = split_words(line, 0, colon);
    if (key_words.size() != 1) {
      throw ParseError(line_no_, 1, "expected a single keyword before ':'");
    }
    const std::string key = key_words[0].text;
    const auto rest = split_words(line, colon + 1, line.size());

    if (key == "agents") {
      once("agents");
      require_header_open(key);
      expect_count(rest, 1, key);
      model_.n_agents = parse_int(rest[0], line_no_);
      if (model_.n_agents < 1) {
        throw ParseError(line_no_, rest[0].column, "agents must be >= 1");
      }
    } else if (key == "discount") {
      once("discount");
      expect_count(rest, 1, key);
      model_.discount = parse_number(rest[0], line_no_);
    } else if (key == "horizon") {
      once("horizon");
      expect_count(rest, 1, key);
      model_.horizon = parse_int(rest[0], line_no_);
      if (model_.horizon < 1) {
        throw ParseError(line_no_, rest[0].column, "horizon must be >= 1");
      }
    } else if (key == "criterion") {
      once("criterion");
      expect_count(rest, 1, key);
      try {
        model_.declared_criterion = parse_criterion(rest[0].text);
      } catch (const std::invalid_argument&) {
        throw ParseError(line_no_, rest[0].column,
                         "unknown criterion '" + rest[0].text + "'");
      }
    } else if (key == "states") {
      once("states");
      require_header_open(key);
      model_.states = labels_of(rest, key);
    } else if (key == "public-observations") {
      once("public-observations");
      require_header_open(key);
      model_.public_obs = labels_of(rest, key);
      public_declared_ = true;
    } else if (key == "actions" || key == "observations") {
      once(key);
      require_header_open(key);
      if (model_.n_agents < 1) {
        throw ParseError(line_no_, 1, "'agents' must precede '" + key + "'");
      }
      pending_what_ = key;
      pending_rows_ = model_.n_agents;
      (key == "actions" ? model_.actions : model_.private_obs).clear();
      if (!rest.empty()) add_list_row(rest);
    } else if (key == "start") {
      once("start");
      ensure_finalized(line_no_);
      parse_start(rest);
    } else if (key == "T") {
      ensure_finalized(line_no_);
      parse_transition(split_segments(line, colon + 1));
    } else if (key == "O") {
      ensure_finalized(line_no_);
      parse_observation(split_segments(line, colon + 1));
    } else if (key.size() >= 2 && key[0] == 'R') {
      ensure_finalized(line_no_);
      const int agent = parse_int({key.substr(1), key_words[0].column + 1},
                                  line_no_);
      if (agent < 1 || agent > model_.n_agents) {
        throw ParseError(line_no_, key_words[0].column,
                         "reward line for unknown agent " + key);
      }
      parse_reward(agent - 1, split_segments(line, colon + 1));
    } else {
      throw ParseError(line_no_, key_words[0].column,
                       "unknown keyword '" + key + "'");
    }
  }

  void once(const std::string& key) {
    if (!seen_.insert(key).second) {
      throw ParseError(line_no_, 1, "duplicate definition of '" + key + "'");
    }
  }

  void require_header_open(const std::string& key) {
    if (finalized_) {
      throw ParseError(line_no_, 1,
                       "'" + key + "' must precede start, T, O and R lines");
    }
  }

  void expect_count(const std::vector<Token>& words, std::size_t n,
                    const std::string& key) {
    if (words.size() != n) {
      throw ParseError(line_no_, words.empty() ? 0 : words[0].column,
                       "dimension mismatch: '" + key + "' expects " +
                           std::to_string(n) + " value(s), got " +
                           std::to_string(words.size()));
    }
  }

  std::vector<std::string> labels_of(const std::vector<Token>& words,
                                     const std::string& key) {
    if (words.empty()) {
      throw ParseError(line_no_, 0, "'" + key + "' needs at least one label");
    }
    std::vector<std::string> out;
    for (const auto& w : words) {
      if (w.text == "*") {
        throw ParseError(line_no_, w.column, "'*' is reserved");
      }
      if (std::find(out.begin(), out.end(), w.text) != out.end()) {
        throw ParseError(line_no_, w.column,
                         "duplicate definition of label '" + w.text + "'");
      }
      out.push_back(w.text);
    }
    return out;
  }

  void add_list_row(const std::vector<Token>& words) {
    auto& target =
        pending_what_ == "actions" ? model_.actions : model_.private_obs;
    target.push_back(labels_of(words, pending_what_));
    --pending_rows_;
  }

  void ensure_finalized(int line) {
    if (finalized_) return;
    for (const char* key : {"agents", "states", "actions", "observations"}) {
      if (!seen_.count(key)) {
        throw ParseError(line, 0, std::string("missing '") + key + "' line");
      }
    }
    model_.finalize();
    finalized_ = true;
  }

  void parse_start(const std::vector<Token>& words) {
    const int nx = model_.num_states();
    if (words.size() == 1 && words[0].text == "uniform") {
      model_.start.assign(nx, 1.0 / nx);
    } else {
      expect_count(words, nx, "start");
      for (int x = 0; x < nx; ++x) {
        model_.start[x] = parse_number(words[x], line_no_);
      }
    }
    have_start_ = true;
  }

  std::vector<std::vector<int>> action_slots(const std::vector<Token>& words) {
    expect_count(words, model_.n_agents, "joint action");
    std::vector<std::vector<int>> slots;
    for (int i = 0; i < model_.n_agents; ++i) {
      slots.push_back(resolve(words[i], model_.actions[i], "action", line_no_));
    }
    return slots;
  }

  void expect_segments(const std::vector<std::vector<Token>>& segs,
                       std::size_t n, const char* key) {
    if (segs.size() != n) {
      throw ParseError(line_no_, 0,
                       std::string("dimension mismatch: '") + key +
                           "' line needs " + std::to_string(n) +
                           " ':'-separated fields, got " +
                           std::to_string(segs.size()));
    }
  }

  void parse_transition(const std::vector<std::vector<Token>>& segs) {
    expect_segments(segs, 4, "T");
    auto slots = action_slots(segs[0]);
    expect_count(segs[1], 1, "T state");
    expect_count(segs[2], 1, "T next state");
    expect_count(segs[3], 1, "T probability");
    slots.push_back(resolve(segs[1][0], model_.states, "state", line_no_));
    slots.push_back(resolve(segs[2][0], model_.states, "state", line_no_));
    const double p = parse_number(segs[3][0], line_no_);
    const int n = model_.n_agents;
    for_each_product(slots, [&](const std::vector<int>& v) {
      const int ja = model_.joint_action(std::span<const int>(v.data(), n));
      model_.T_ref(ja, v[n], v[n + 1]) = p;
    });
  }

  void parse_observation(const std::vector<std::vector<Token>>& segs) {
    expect_segments(segs, 4, "O");
    auto slots = action_slots(segs[0]);
    expect_count(segs[1], 1, "O next state");
    expect_count(segs[3], 1, "O probability");
    slots.push_back(resolve(segs[1][0], model_.states, "state", line_no_));
    const int n = model_.n_agents;
    const auto& obs = segs[2];
    if (public_declared_) {
      expect_count(obs, n + 1, "O observation");
      slots.push_back(
          resolve(obs[0], model_.public_obs, "public observation", line_no_));
    } else {
      expect_count(obs, n, "O observation");
      slots.push_back({0});
    }
    const int offset = public_declared_ ? 1 : 0;
    for (int i = 0; i < n; ++i) {
      slots.push_back(resolve(obs[offset + i], model_.private_obs[i],
                              "observation", line_no_));
    }
    const double p = parse_number(segs[3][0], line_no_);
    for_each_product(slots, [&](const std::vector<int>& v) {
      const int ja = model_.joint_action(std::span<const int>(v.data(), n));
      const int jo = model_.joint_obs(
          v[n + 1], std::span<const int>(v.data() + n + 2, n));
      model_.O_ref(ja, v[n], jo) = p;
    });
  }

  void parse_reward(int agent, const std::vector<std::vector<Token>>& segs) {
    expect_segments(segs, 3, "R");
    auto slots = action_slots(segs[0]);
    expect_count(segs[1], 1, "R state");
    expect_count(segs[2], 1, "R value");
    slots.push_back(resolve(segs[1][0], model_.states, "state", line_no_));
    const double r = parse_number(segs[2][0], line_no_);
    const int n = model_.n_agents;
    for_each_product(slots, [&](const std::vector<int>& v) {
      const int ja = model_.joint_action(std::span<const int>(v.data(), n));
      model_.R_ref(agent, v[n], ja) = r;
    });
    model_.rewards_declared[agent] = true;
  }

  void derive_rewards() {
    if (!model_.declared_criterion) return;
    const Criterion c = *model_.declared_criterion;
    if (c == Criterion::kZeroSum && model_.n_agents == 2 &&
        !model_.rewards_declared[1]) {
      for (std::size_t k = 0; k < model_.rewards[0].size(); ++k) {
        model_.rewards[1][k] = -model_.rewards[0][k];
      }
    } else if (c == Criterion::kCommon) {
      for (int i = 1; i < model_.n_agents; ++i) {
        if (!model_.rewards_declared[i]) model_.rewards[i] = model_.rewards[0];
      }
    }
  }

  PosgModel model_;
  int line_no_ = 0;
  bool finalized_ = false;
  bool have_start_ = false;
  bool public_declared_ = false;
  int pending_rows_ = 0;
  std::string pending_what_;
  std::set<std::string> seen_;
};

}  // namespace

PosgModel parse_posg(std::string_view text) { return Parser().run(text); }

PosgModel load_posg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PosgError("cannot open model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_posg(buffer.str());
}

}  // namespace posg
