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

#ifndef POSG_TESTS_SUPPORT_HPP_
#define POSG_TESTS_SUPPORT_HPP_

#include <string>

#include "posg/model.hpp"
#include "posg/parse.hpp"

namespace posg::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(POSG_FIXTURE_DIR) + "/" + name;
}

inline PosgModel fixture(const std::string& name) {
  return load_posg(fixture_path(name));
}

}  // namespace posg::testing

#endif  // POSG_TESTS_SUPPORT_HPP_
