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

#include "qlattice/benchmarking/rb.hpp"

namespace qlattice::benchmarking {

/// Residual coupling between a qubit of one set and a qubit of the other
/// (indices into each set's gate-set qubits).
struct CrossCoupling {
  int qubit_a = 0;  ///< qubit of set 0
  int qubit_b = 0;  ///< qubit of set 1
  double zz_MHz = 0.0;
};

/// Crosstalk injected between the two sets of a simultaneous experiment.
struct CrosstalkOptions {
  std::vector<CrossCoupling> couplings;
  /// Fraction of every drive on a coupled qubit of set 0 that also reaches
  /// its partner in set 1 (same carrier and phase).
  double leakage_first_to_second = 0.0;
  /// Same, from set 1 onto set 0.
  double leakage_second_to_first = 0.0;
  /// Quantum trajectories per sequence when crosstalk is present.
  int trajectories = 16;
  /// Longest slice between crosstalk kicks.
  double chunk_ns = 8.0;

  bool active() const;
};

struct SimultaneousResult {
  std::vector<RbRecord> individual;
  std::vector<RbRecord> simultaneous;
  std::vector<DecayFit> individual_fit;
  std::vector<DecayFit> simultaneous_fit;
  /// p(individual) - p(simultaneous) per set.
  std::vector<double> addressability;
};

/// Simultaneous RB of two disjoint sets on a shared barrier schedule.
/// Without crosstalk each set is simulated exactly on its own; with
/// crosstalk the joint state is sampled by quantum trajectories whose
/// random numbers depend only on (seed, length, randomization, trajectory),
/// so sweeps over crosstalk strength use common random numbers.
std::vector<RbRecord> run_simultaneous(const std::vector<const SetSimulator*>& sets,
                                       const RbOptions& options,
                                       const CrosstalkOptions& crosstalk);

/// Individual (barrier-aligned, partner idle) and simultaneous runs plus
/// the addressability error of each set.
SimultaneousResult simultaneous_rb(const std::vector<const SetSimulator*>& sets,
                                   const RbOptions& options, const CrosstalkOptions& crosstalk);

/// One sequence of the joint trajectory simulation: mean survival of each
/// set over `trajectories` trajectories.  Exposed for tests.
std::vector<double> trajectory_survival(const std::vector<const SetSimulator*>& sets,
                                        const std::vector<std::vector<int>>& sequences,
                                        const CrosstalkOptions& crosstalk, std::uint64_t stream);

}  // namespace qlattice::benchmarking
