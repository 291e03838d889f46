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

#include "qlattice/dynamics/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

std::vector<double> outcome_probabilities(const Matrix& rho, int levels, int n,
                                          const std::vector<double>& assignment_error) {
  if (!assignment_error.empty() && static_cast<int>(assignment_error.size()) != n)
    throw ValidationError("assignment error needs one entry per qubit");
  for (double e : assignment_error)
    if (!(e >= 0.0 && e < 0.5)) throw ValidationError("assignment error must be in [0, 0.5)");
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  for (int i = 0; i < rho.rows(); ++i) {
    int rest = i;
    unsigned bits = 0;
    for (int k = n - 1; k >= 0; --k) {
      if (rest % levels != 0) bits |= 1u << (n - 1 - k);
      rest /= levels;
    }
    probs[bits] += std::max(0.0, rho(i, i).real());
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  for (int k = 0; k < static_cast<int>(assignment_error.size()); ++k) {
    const double e = assignment_error[k];
    if (e == 0.0) continue;
    const unsigned bit = 1u << (n - 1 - k);
    for (unsigned s = 0; s < probs.size(); ++s) {
      if (s & bit) continue;
      const double p0 = probs[s], p1 = probs[s | bit];
      probs[s] = (1.0 - e) * p0 + e * p1;
      probs[s | bit] = e * p0 + (1.0 - e) * p1;
    }
  }
  return probs;
}

double excited_probability(const Matrix& rho, int levels, int n, int k,
                           double assignment_error) {
  std::vector<double> errors(n, 0.0);
  errors[k] = assignment_error;
  const auto probs = outcome_probabilities(rho, levels, n, errors);
  double p1 = 0.0;
  const unsigned bit = 1u << (n - 1 - k);
  for (unsigned s = 0; s < probs.size(); ++s)
    if (s & bit) p1 += probs[s];
  return p1;
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities,
                                         std::uint64_t shots, CounterRng& rng) {
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  double remaining_p = 1.0;
  std::uint64_t remaining = shots;
  for (std::size_t i = 0; i < probabilities.size() && remaining > 0; ++i) {
    if (i + 1 == probabilities.size()) {
      counts[i] = remaining;
      break;
    }
    const double p = remaining_p > 0.0
                         ? std::clamp(probabilities[i] / remaining_p, 0.0, 1.0)
                         : 0.0;
    counts[i] = rng.binomial(remaining, p);
    remaining -= counts[i];
    remaining_p -= probabilities[i];
  }
  return counts;
}

double sampled_probability(double p1, std::uint64_t shots, CounterRng& rng) {
  if (shots == 0) return p1;
  return static_cast<double>(rng.binomial(shots, std::clamp(p1, 0.0, 1.0))) /
         static_cast<double>(shots);
}

}  // namespace qlattice::dynamics
