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
#include <vector>

#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/types.hpp"

namespace qlattice::dynamics {

/// Outcome distribution of a projective readout of every transmon.  Any level
/// >= 1 reads as "1"; each qubit's result then passes through a symmetric
/// assignment-error channel.  Bitstring index has transmon 0 as the most
/// significant bit.
std::vector<double> outcome_probabilities(const Matrix& rho, int levels, int n_transmons,
                                          const std::vector<double>& assignment_error = {});

/// Marginal probability of reading "1" on transmon k.
double excited_probability(const Matrix& rho, int levels, int n_transmons, int k,
                           double assignment_error = 0.0);

/// Multinomial shot counts for an outcome distribution.
std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities,
                                         std::uint64_t shots, CounterRng& rng);

/// Empirical frequency of outcome "1" in `shots` shots for a marginal p1;
/// shots == 0 returns p1 itself (exact expectation).
double sampled_probability(double p1, std::uint64_t shots, CounterRng& rng);

}  // namespace qlattice::dynamics
