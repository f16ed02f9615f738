// Copyright 2026 The qcopy Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace qcopy {

/// Counter-based 64-bit generator: output k is splitmix64(key + k * gamma),
/// with key = splitmix64(seed). The integer stream depends only on the seed,
/// so it is identical on every platform and easy to reproduce elsewhere.
///
/// Floating draws use fixed transforms rather than <random> distributions,
/// whose algorithms are implementation-defined:
///   uniform  = (x >> 11) * 2^-53                          in [0, 1)
///   gaussian = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)         (Box-Muller, one
///              value per two uniforms, no caching)
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t counter() const { return counter_; }

  /// Seed for an independent sub-stream, e.g. one per sweep point.
  static std::uint64_t derive(std::uint64_t base, std::uint64_t index) { return base ^ index; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qcopy
