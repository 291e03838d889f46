// Copyright 2026 The qlattice Authors
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

#include <cstdint>
#include <limits>

namespace qlattice {

/// SplitMix64 finalizer; used to derive independent stream keys.
std::uint64_t mix64(std::uint64_t x);

/// Derive a stream key from a seed and up to three counters.  Results do not
/// depend on evaluation order, so per-item streams are thread-count invariant.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b = 0, std::uint64_t c = 0);

/// Counter-based generator: output k is mix64(key + k * golden).  Satisfies
/// UniformRandomBitGenerator so it can feed <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in (0, 1].
  double uniform_open_low();
  /// Standard normal via Box-Muller (no cached second value, so the draw
  /// count per call is fixed at two).
  double normal();
  /// Binomial(n, p) by exact CDF inversion, walking outward from the mode.
  std::uint64_t binomial(std::uint64_t n, double p);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qlattice
