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

#include <string>
#include <vector>

#include "qlattice/benchmarking/simultaneous.hpp"
#include "qlattice/calibration/coherence.hpp"
#include "qlattice/calibration/single_qubit.hpp"
#include "qlattice/calibration/store.hpp"
#include "qlattice/harness/device_config.hpp"

namespace qlattice::harness {

/// Starting X90 amplitude for a pulse of the given length: the Rabi rate
/// whose envelope area gives a quarter turn.
double area_estimate_x90(const calibration::SingleQubitParams& params);

/// Full tune-up of the listed qubits (pi/2, pi, DRAG; each on its own
/// transmon model) and then the listed edges (CR amplitude, CR phase on the
/// control-target pair model).  Qubits already calibrated in `store` are
/// reused.  Independent targets run concurrently on up to `threads` threads;
/// results come back in list order.
std::vector<calibration::CalibrationResult> calibrate_device(
    const DeviceConfig& device, calibration::CalibrationStore& store,
    const std::vector<std::string>& qubits, const std::vector<std::string>& edges,
    const calibration::CalibrationOptions& options, unsigned threads = 1);

/// T1 and T2echo of one qubit under its configured noise, on a delay grid
/// spanning five times the configured value (100 us when none is set).
calibration::CoherenceFit measure_coherence(const DeviceConfig& device,
                                            const calibration::CalibrationStore& store,
                                            const std::string& qubit, std::uint64_t shots,
                                            std::uint64_t seed, int points = 81);

/// Exact simulator of one RB target ("Q1" or an edge) from the store.
benchmarking::SetSimulator make_set_simulator(const DeviceConfig& device,
                                              const calibration::CalibrationStore& store,
                                              const std::string& label, bool noisy);

/// Standard RB of one target on its own.
benchmarking::RbRecord run_target_rb(const DeviceConfig& device,
                                     const calibration::CalibrationStore& store,
                                     const std::string& label,
                                     const benchmarking::RbOptions& options, bool noisy);

/// Crosstalk between two sets given by device qubit names.
struct NamedCoupling {
  std::string qubit_a, qubit_b;
  double zz_MHz = 0.0;
};
struct NamedCrosstalk {
  std::vector<NamedCoupling> couplings;
  double leakage_first_to_second = 0.0;
  double leakage_second_to_first = 0.0;
  int trajectories = 16;
};

/// Resolves qubit names against two gate sets (either order per coupling).
benchmarking::CrosstalkOptions resolve_crosstalk(const benchmarking::SetSimulator& first,
                                                 const benchmarking::SetSimulator& second,
                                                 const NamedCrosstalk& crosstalk);

/// Individual and simultaneous RB of two disjoint targets.
benchmarking::SimultaneousResult run_simultaneous_rb(
    const DeviceConfig& device, const calibration::CalibrationStore& store,
    const std::string& first, const std::string& second,
    const benchmarking::RbOptions& options, bool noisy, const NamedCrosstalk& crosstalk);

}  // namespace qlattice::harness
