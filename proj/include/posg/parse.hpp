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

#ifndef POSG_PARSE_HPP_
#define POSG_PARSE_HPP_

#include <string>
#include <string_view>

#include "posg/model.hpp"

namespace posg {

// Parses the line-oriented `.posg` format and validates the result.
//
//   agents: 2
//   discount: 1
//   horizon: 2
//   criterion: common
//   states: tiger-left tiger-right
//   actions:
//   listen open-left open-right
//   listen open-left open-right
//   observations:
//   hear-left hear-right
//   hear-left hear-right
//   public-observations: quiet loud      (optional)
//   start: 0.5 0.5                       (or "start: uniform")
//   T: <a1> ... <an> : <s> : <s'> : <p>
//   O: <a1> ... <an> : <s'> : [<w>] <z1> ... <zn> : <p>
//   R1: <a1> ... <an> : <s> : <r>
//
// `*` matches every label in its slot, labels may also be given as
// 0-based indices, and later lines override earlier ones. When public
// observations are declared, O lines name the public component first.
// Reward tables left undeclared under a zerosum or common criterion are
// derived from R1.
//
// Throws ParseError for malformed text and ValidationError when the filled
// tables break a model invariant.
PosgModel parse_posg(std::string_view text);

// Reads and parses a file. Throws PosgError when the file cannot be read.
PosgModel load_posg(const std::string& path);

}  // namespace posg

#endif  // POSG_PARSE_HPP_
