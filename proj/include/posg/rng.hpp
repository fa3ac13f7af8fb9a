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

#ifndef POSG_RNG_HPP_
#define POSG_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace posg {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the independent stream used for episode or sample k.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(seed + k * 0x9E3779B97F4A7C15ULL);
}

// mt19937_64 with a platform independent double conversion (the standard
// distributions are implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform integer in [0, n).
  int below(int n) {
    return static_cast<int>(uniform() * n);
  }
  // Index drawn from an unnormalized weight vector.
  int categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = uniform() * total;
    double acc = 0.0;
    int last = -1;
    for (int k = 0; k < static_cast<int>(weights.size()); ++k) {
      if (weights[k] <= 0.0) continue;
      acc += weights[k];
      last = k;
      if (target < acc) return k;
    }
    return last;
  }
  // Random point of the probability simplex (normalized exponentials).
  std::vector<double> simplex(int n) {
    std::vector<double> out(n);
    double total = 0.0;
    for (double& v : out) {
      v = -std::log(1.0 - uniform());
      total += v;
    }
    for (double& v : out) v /= total;
    return out;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace posg

#endif  // POSG_RNG_HPP_
