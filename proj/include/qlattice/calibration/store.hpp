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
#include <mutex>
#include <string>
#include <vector>

namespace qlattice::calibration {

/// Outcome of one closed-loop tune-up.
struct CalibrationResult {
  std::string target;     ///< qubit ("Q1") or edge ("CR12") name
  std::string parameter;  ///< "pi2_amplitude", "pi_amplitude", "drag", ...
  double initial_value = 0.0;
  double value = 0.0;
  /// |signal - 0.5| of the error-amplified sequence at the largest N.
  double residual = 0.0;
  /// Residual at the starting point; large values hint at an alias.
  double first_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  bool alias_warning = false;
  std::string note;
};

/// Single-qubit drive parameters for one transmon.
struct SingleQubitParams {
  double duration_ns = 53.3;
  double amp_x90_MHz = 0.0;
  double amp_x180_MHz = 0.0;
  double drag = 0.0;
  bool pi2_done = false;
  bool pi_done = false;
  bool drag_done = false;
};

/// Echoed cross-resonance parameters for one oriented edge.
struct CrossResonanceParams {
  std::string control;
  std::string target;
  double half_duration_ns = 250.0;
  double rise_ns = 20.0;
  double amplitude_MHz = 0.0;
  double phase_rad = 0.0;
  /// Frame corrections: Rz on the control after the gate, and Rz on the
  /// target split evenly before and after it.
  double control_z_rad = 0.0;
  double target_z_rad = 0.0;
  bool amplitude_done = false;
  bool phase_done = false;
};

/// Per-device calibration state.  Writes are serialized; every stage checks
/// that its prerequisites are present and throws OrderingError otherwise.
/// Order: pi/2 -> pi -> DRAG per qubit, then CR amplitude -> CR phase per
/// edge (both qubits of the edge must have completed DRAG).
class CalibrationStore {
 public:
  CalibrationStore() = default;
  CalibrationStore(const CalibrationStore& other);
  CalibrationStore& operator=(const CalibrationStore& other);

  void set_initial_qubit(const std::string& qubit, const SingleQubitParams& params);
  void set_initial_edge(const std::string& edge, const CrossResonanceParams& params);

  SingleQubitParams qubit(const std::string& name) const;
  CrossResonanceParams edge(const std::string& name) const;
  bool has_qubit(const std::string& name) const;
  bool has_edge(const std::string& name) const;

  /// Throws OrderingError unless `stage` may run now.
  void require_ready_for(const std::string& target, const std::string& stage) const;

  void commit_pi2(const std::string& qubit, double amplitude, const CalibrationResult& r);
  void commit_pi(const std::string& qubit, double amplitude, const CalibrationResult& r);
  void commit_drag(const std::string& qubit, double drag, const CalibrationResult& r);
  void commit_cr_amplitude(const std::string& edge, double amplitude, double control_z,
                           double target_z, const CalibrationResult& r);
  void commit_cr_phase(const std::string& edge, double phase, double control_z,
                       double target_z, const CalibrationResult& r);

  /// Every qubit has finished DRAG and every edge has finished its phase.
  bool complete() const;
  std::vector<CalibrationResult> history() const;
  std::vector<std::string> qubit_names() const;
  std::vector<std::string> edge_names() const;

 private:
  void check_locked(const std::string& target, const std::string& stage) const;

  mutable std::mutex mutex_;
  std::map<std::string, SingleQubitParams> qubits_;
  std::map<std::string, CrossResonanceParams> edges_;
  std::vector<CalibrationResult> history_;
};

}  // namespace qlattice::calibration
