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

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/device/coupling.hpp"
#include "qlattice/device/readout.hpp"
#include "qlattice/device/transmon.hpp"
#include "qlattice/dynamics/hamiltonian.hpp"
#include "qlattice/dynamics/noise.hpp"

namespace qlattice::harness {

inline constexpr const char* kDeviceSchema = "qlattice.device/1";

/// One transmon column of the device file.  `f01_GHz` and
/// `anharmonicity_MHz` are the spectroscopic values used by the dynamics;
/// `circuit` (optional) holds the lumped-element values; `reported` keeps the
/// published comparison values keyed by table row id (see report.hpp).
struct QubitConfig {
  std::string name;
  double f01_GHz = 0.0;
  double anharmonicity_MHz = 0.0;
  std::optional<device::TransmonCircuit> circuit;
  double t1_us = 0.0;      ///< 0 = no relaxation
  double t2echo_us = 0.0;  ///< 0 = no dephasing
  std::map<std::string, double> reported;
};

struct ReadoutConfig {
  std::string qubit;
  device::ReadoutResonator resonator;
};

struct BusConfig {
  std::string qubit_a, qubit_b;
  device::BusCoupling coupling;  ///< g1 belongs to qubit_a
};

/// Oriented cross-resonance edge; the control is named first ("CR12": Q1
/// drives at Q2's frequency).
struct EdgeConfig {
  std::string name;
  std::string control, target;
};

/// Design-target column: a qubit column plus its intended readout.
struct TargetedDesign {
  QubitConfig qubit;
  device::ReadoutResonator readout;
};

struct DeviceConfig {
  std::string name;
  std::optional<TargetedDesign> targeted;
  std::vector<QubitConfig> qubits;
  std::vector<ReadoutConfig> readout;
  std::vector<BusConfig> buses;
  std::vector<EdgeConfig> edges;

  /// Throws ValidationError naming the offending field path.
  void validate() const;

  int qubit_index(const std::string& name) const;  ///< throws if unknown
  const QubitConfig& qubit(const std::string& name) const;
  const ReadoutConfig& readout_of(const std::string& qubit) const;
  const EdgeConfig& edge(const std::string& name) const;
  bool has_edge(const std::string& name) const;
  /// Bus joining two qubits, if any.
  const BusConfig* bus_between(const std::string& a, const std::string& b) const;
  /// Bus-mediated exchange J in MHz (0 when no bus joins the qubits).
  double exchange_J(const std::string& a, const std::string& b) const;

  /// Model of the listed qubits in order, with the exchange couplings of
  /// every bus among them.
  dynamics::HamiltonianModel model(const std::vector<std::string>& qubits) const;
  /// Relaxation and echo-dephasing channels of the listed qubits.
  dynamics::NoiseChannels noise(const std::vector<std::string>& qubits) const;
  /// Qubits of an RB or calibration target: {"Q1"} or {control, target}.
  std::vector<std::string> target_qubits(const std::string& label) const;
};

DeviceConfig device_from_json(const nlohmann::json& j);
nlohmann::json device_to_json(const DeviceConfig& device);
/// Reads and validates a device file.
DeviceConfig load_device(const std::string& path);
void save_device(const DeviceConfig& device, const std::string& path);

}  // namespace qlattice::harness
