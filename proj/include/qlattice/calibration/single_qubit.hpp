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
#include <string_view>
#include <vector>

#include "qlattice/calibration/ping_pong.hpp"
#include "qlattice/calibration/store.hpp"
#include "qlattice/dynamics/propagator.hpp"

namespace qlattice::calibration {

struct CalibrationOptions {
  /// Shots per sequence point; 0 uses exact expectation values.
  std::uint64_t shots = 2000;
  std::uint64_t seed = 1;
  double amplitude_tolerance = 1e-3;  ///< relative
  double phase_tolerance_deg = 0.5;
  double drag_tolerance = 0.02;  ///< relative
  int max_evaluations = 60;
  /// Allowed |P - 1/2| at the largest N on top of the shot-noise allowance.
  double residual_tolerance = 0.03;
  /// Residual at the starting point above which an alias is suspected.
  double alias_threshold = 0.35;
};

enum class SingleQubitGate { kX90, kXm90, kY90, kYm90, kX180, kXm180, kY180, kYm180 };

std::string_view to_string(SingleQubitGate gate);
SingleQubitGate single_qubit_gate_from_string(std::string_view label);

/// Gaussian DRAG pulse realizing `gate` on `channel` with calibrated params.
dynamics::PulseEnvelope single_qubit_pulse(const SingleQubitParams& params, int channel,
                                           SingleQubitGate gate);

/// Closed-loop single-qubit tune-up driving the pulse simulator.
class QubitCalibrator {
 public:
  QubitCalibrator(const dynamics::PulseSimulator& sim, int transmon, std::string name,
                  CalibrationOptions options = {});

  /// X90 (X90 X90)^N, tuned parameter: X90 amplitude.
  PingPongTrain pi2_train(const SingleQubitParams& base) const;
  /// X90 (X180)^N, tuned parameter: X180 amplitude.
  PingPongTrain pi_train(const SingleQubitParams& base) const;
  /// X90 (X90 X-90)^N, tuned parameter: DRAG coefficient.
  PingPongTrain drag_train(const SingleQubitParams& base) const;

  CalibrationResult calibrate_pi2(CalibrationStore& store) const;
  CalibrationResult calibrate_pi(CalibrationStore& store) const;
  CalibrationResult calibrate_drag(CalibrationStore& store, double sweep_span = 0.1) const;

  /// Rotation angle of one pulse's qubit block.
  double rotation_angle(const SingleQubitParams& params, SingleQubitGate gate) const;
  /// Dense-sweep oracle: amplitude whose pulse rotates by exactly
  /// `target_angle` (pi/2 for X90, pi for X180) at the given DRAG setting.
  double oracle_amplitude(const SingleQubitParams& base, SingleQubitGate gate) const;
  /// Population left in level 2 after X180 from the ground state.
  double leakage_after_pi(const SingleQubitParams& params) const;
  /// Dense-sweep oracle: DRAG coefficient minimizing leakage after X180.
  double oracle_drag(const SingleQubitParams& base, double lo, double hi) const;

  /// Excited probability after a list of gates from the ground state.
  double excited_probability(const SingleQubitParams& params,
                             const std::vector<SingleQubitGate>& gates) const;

  const CalibrationOptions& options() const { return options_; }
  const std::string& name() const { return name_; }

 private:
  double measured(double p1, std::uint64_t stream) const;

  const dynamics::PulseSimulator& sim_;
  int transmon_;
  std::string name_;
  CalibrationOptions options_;
};

/// Shot-noise allowance added to the residual tolerance.
double shot_noise_allowance(std::uint64_t shots);

}  // namespace qlattice::calibration
