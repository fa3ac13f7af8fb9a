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

#ifndef POSG_FORMAT_HPP_
#define POSG_FORMAT_HPP_

#include <cstdio>
#include <string>

namespace posg {

// Ten significant digits, "%.10g". Negative zero prints as "0".
inline std::string format_double(double value) {
  if (value == 0.0) value = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

}  // namespace posg

#endif  // POSG_FORMAT_HPP_
