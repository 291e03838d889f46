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

#include <optional>
#include <string>
#include <vector>

#include "qlattice/benchmarking/clifford_group.hpp"
#include "qlattice/calibration/cross_resonance.hpp"
#include "qlattice/calibration/store.hpp"
#include "qlattice/dynamics/pulse.hpp"

namespace qlattice::benchmarking {

/// Calibrated primitives of one RB target: one qubit, or a CR pair whose
/// Clifford qubit 0 is the CR control.
struct GateSetSpec {
  std::string label;                 ///< e.g. "Q1" or "CR12"
  std::vector<int> transmons;        ///< model indices, Clifford qubit order
  std::vector<std::string> names;    ///< device qubit names, same order
  std::vector<calibration::SingleQubitParams> qubits;
  std::optional<calibration::CrossResonanceParams> cr;
};

/// Gate set read from a calibration store; throws OrderingError if the
/// required calibrations are missing.
GateSetSpec gate_set_from_store(const calibration::CalibrationStore& store,
                                const std::string& label, const std::vector<int>& transmons);

/// Maps primitives to pulses.  Primitives of a Clifford play back to back in
/// list order (single-qubit pulses of the two qubits are not overlapped).
class GateSet {
 public:
  explicit GateSet(GateSetSpec spec);

  const GateSetSpec& spec() const { return spec_; }
  int n_qubits() const { return static_cast<int>(spec_.transmons.size()); }
  double op_duration(const GateOp& op) const;
  double duration(const std::vector<GateOp>& ops) const;
  /// Appends the gate list starting at t0; returns the end time.
  double schedule(const std::vector<GateOp>& ops, double t0_ns,
                  dynamics::ControlSequence& out) const;
  /// Same schedule with transmon indices remapped through `index_map`
  /// (model index -> index in another model).
  double schedule_mapped(const std::vector<GateOp>& ops, double t0_ns,
                         const std::vector<int>& index_map,
                         dynamics::ControlSequence& out) const;

 private:
  GateSetSpec spec_;
};

}  // namespace qlattice::benchmarking
