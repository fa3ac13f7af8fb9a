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

#ifndef POSG_ERROR_HPP_
#define POSG_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace posg {

// Base class for every error raised by the library.
class PosgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed `.posg` text. Line and column are 1-based; column 0 means the
// whole line.
class ParseError : public PosgError {
 public:
  ParseError(int line, int column, const std::string& message)
      : PosgError("line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A structurally complete model that violates a model invariant (row sums,
// start distribution, declared criterion).
class ValidationError : public PosgError {
 public:
  using PosgError::PosgError;
};

class CapExceededError : public PosgError {
 public:
  CapExceededError(const std::string& what, std::uint64_t count,
                   std::uint64_t cap)
      : PosgError("enumeration too large: " + what + " has " +
                  std::to_string(count) + " elements (cap " +
                  std::to_string(cap) + ")"),
        count_(count) {}

  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

// A history, observation or decision that has probability zero where a
// positive one is required.
class ZeroProbabilityError : public PosgError {
 public:
  using PosgError::PosgError;
};

// A decision rule was queried at a history it does not cover.
class UndefinedRuleError : public PosgError {
 public:
  using PosgError::PosgError;
};

}  // namespace posg

#endif  // POSG_ERROR_HPP_
