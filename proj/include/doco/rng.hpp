// Copyright 2026 the doco-sim authors. All rights reserved.
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

#ifndef DOCO_RNG_HPP
#define DOCO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace doco {

// SplitMix64. Deterministic across platforms, which the reproducibility
// manifest relies on; do not swap for std::mt19937 in simulation paths.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform in {0, ..., n-1} by rejection, n >= 1.
  uint64_t index(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  double gaussian() {
    // Box-Muller; one value per call keeps the stream position predictable.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::vector<double> gaussian_vector(int dim) {
    std::vector<double> v(static_cast<size_t>(dim));
    for (auto& x : v) x = gaussian();
    return v;
  }

 private:
  uint64_t state_;
};

// Counter-based derivation: one master seed fans out to per-round (or
// per-purpose) child seeds so repetitions stay independent and replayable.
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
  Rng r(master ^ (0x6A09E667F3BCC909ULL + counter * 0x9E3779B97F4A7C15ULL));
  return r.next_u64();
}

}  // namespace doco

#endif  // DOCO_RNG_HPP
