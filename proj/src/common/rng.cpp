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

#include "qlattice/common/rng.hpp"

#include <cmath>
#include <numbers>

namespace qlattice {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) {
  std::uint64_t k = mix64(seed + kGolden);
  k = mix64(k ^ (a + 0x632BE59BD9B4E019ULL));
  k = mix64(k ^ (b + 0x8CB92BA72F3D8DD7ULL));
  k = mix64(k ^ (c + 0xD6E8FEB86659FD93ULL));
  return k;
}

CounterRng::result_type CounterRng::operator()() {
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open_low() { return 1.0 - uniform(); }

double CounterRng::normal() {
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  // Lemire-style rejection keeps the draw unbiased.
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % n;
}

std::uint64_t CounterRng::binomial(std::uint64_t n, double p) {
  if (p <= 0.0 || n == 0) return 0;
  if (p >= 1.0) return n;
  // Inversion on the CDF, walking outward from the mode keeps the number
  // of terms O(sqrt(n p (1-p))) in expectation.
  const double q = 1.0 - p;
  const double u = uniform();
  const auto mode = static_cast<std::uint64_t>(std::floor((n + 1) * p));
  const double log_pmf_mode = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                              std::lgamma(n - mode + 1.0) +
                              mode * std::log(p) + (n - mode) * std::log(q);
  const double pmf_mode = std::exp(log_pmf_mode);
  double cdf = pmf_mode;
  if (u < cdf) return mode;
  double lo_pmf = pmf_mode, hi_pmf = pmf_mode;
  std::uint64_t lo = mode, hi = mode;
  const double ratio = p / q;
  while (lo > 0 || hi < n) {
    if (hi < n) {
      hi_pmf *= ratio * static_cast<double>(n - hi) / static_cast<double>(hi + 1);
      ++hi;
      cdf += hi_pmf;
      if (u < cdf) return hi;
    }
    if (lo > 0) {
      lo_pmf *= static_cast<double>(lo) / (ratio * static_cast<double>(n - lo + 1));
      --lo;
      cdf += lo_pmf;
      if (u < cdf) return lo;
    }
    if (hi_pmf < 1e-300 && lo_pmf < 1e-300) break;
  }
  return mode;
}

}  // namespace qlattice
