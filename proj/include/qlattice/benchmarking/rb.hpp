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
#include <string>
#include <vector>

#include "qlattice/benchmarking/clifford_group.hpp"
#include "qlattice/benchmarking/decay_fit.hpp"
#include "qlattice/benchmarking/gate_set.hpp"
#include "qlattice/dynamics/propagator.hpp"

namespace qlattice::benchmarking {

struct RbOptions {
  std::vector<int> lengths;
  int randomizations = 30;
  std::uint64_t seed = 1;
  /// Shots per sequence; 0 reports the exact ground-state probability.
  std::uint64_t shots = 0;
  unsigned threads = 1;
};

/// 1Q: {1,10,25,50,75,100,150,200}; 2Q: {1,2,4,8,16,32,64}.
std::vector<int> default_lengths(int n_qubits);

struct RbRecord {
  std::string label;
  std::string mode;  ///< "individual", "simultaneous" or "depolarizing"
  int n_qubits = 1;
  std::vector<int> lengths;
  int randomizations = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> survival;  ///< [length][randomization]
  std::vector<double> mean;
  std::vector<double> stderr_;

  /// Fills mean and standard error from `survival`.
  void summarize();
  DecayFit fit() const;
};

/// Random Clifford indices for set `set_index` of a (possibly simultaneous)
/// experiment, drawn from the stream (seed, set, length, randomization).
std::vector<int> random_sequence(const CliffordGroup& group, int length, std::uint64_t seed,
                                 int set_index, int randomization);
/// Sequence followed by its inverting element.
std::vector<int> with_inverse(const CliffordGroup& group, std::vector<int> sequence);

/// Start time of every Clifford when all sets wait at a barrier after each
/// Clifford: start[k+1] = start[k] + max over sets of duration[set][k].
std::vector<double> aligned_starts(const std::vector<std::vector<double>>& durations);

/// Exact density-matrix simulation of one RB target on its own model
/// (transmons 0..n-1 of `model` are the gate set's qubits).
class SetSimulator {
 public:
  SetSimulator(dynamics::HamiltonianModel model, dynamics::NoiseChannels noise, GateSet gates,
               dynamics::IntegratorOptions options = {});

  const GateSet& gates() const { return gates_; }
  const CliffordGroup& group() const;
  const dynamics::PulseSimulator& simulator() const { return sim_; }
  double clifford_duration(int element) const;
  /// Probability of reading all qubits in 0 after the elements play at the
  /// given start times (idle in between).
  double survival(const std::vector<int>& elements, const std::vector<double>& starts) const;

 private:
  GateSet gates_;
  dynamics::PulseSimulator sim_;
};

/// RB of one target.  `partners` (optional) are the gate sets of a
/// simultaneous experiment this target belongs to, listed in set order with
/// the target at position `self`; the target then follows the shared
/// barrier schedule while the partners' qubits are left idle.
RbRecord run_rb(const SetSimulator& target, const RbOptions& options,
                const std::vector<const GateSet*>& partners = {}, int self = 0);

/// Gate-level RB with ideal Cliffords each followed by a depolarizing
/// channel of average infidelity r, so that p = 1 - r d / (d - 1).
RbRecord run_depolarizing_rb(int n_qubits, double infidelity, const RbOptions& options);

}  // namespace qlattice::benchmarking
