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

#include "qlattice/calibration/single_qubit.hpp"
#include "qlattice/device/coupling.hpp"
#include "qlattice/dynamics/pulse.hpp"

namespace qlattice::calibration {

/// Frame corrections completing the echoed CR into exp(-i pi/4 Z (x) n_phi),
/// n_phi = cos(phi) X + sin(phi) Y.  The control correction follows the gate;
/// the target correction is split evenly before and after it.
struct FrameFit {
  double control_z_rad = 0.0;
  double target_z_rad = 0.0;
  double axis_rad = 0.0;  ///< phi, wrapped to (-pi, pi]
  /// Azimuth of the target rotation axis with the control in |0>, after the
  /// corrections; this is the axis the phase-calibration train responds to.
  double control0_axis_rad = 0.0;
  double fidelity = 0.0;
};

/// Ideal exp(-i pi/4 Z (x) (cos(phi) X + sin(phi) Y)).
dynamics::Matrix zx90_about(double axis_rad);

/// Echoed CR primitive CR(phi) - X180(control) - CR(phi + pi) - X180(control)
/// starting at `t0_ns`, with the frame corrections as virtual Z events.
/// Transmon `control` carries the CR tone at the target's frequency.
dynamics::ControlSequence build_echoed_cr(const CrossResonanceParams& cr,
                                          const SingleQubitParams& control_params,
                                          int control, int target, double t0_ns = 0.0);

/// Total duration of the echoed primitive.
double echoed_cr_duration(const CrossResonanceParams& cr,
                          const SingleQubitParams& control_params);

/// Closed-loop tune-up of one CR edge on a two-transmon model in which
/// transmon 0 is the control and transmon 1 the target.
class CrossResonanceCalibrator {
 public:
  CrossResonanceCalibrator(const dynamics::PulseSimulator& sim, std::string edge,
                           std::string control_name, std::string target_name,
                           CalibrationOptions options = {});

  /// Where the target sits relative to the control's transitions.
  device::CrWindow window() const;

  /// Dressed-frame propagator of the uncorrected echoed primitive starting at t0.
  dynamics::Matrix raw_gate(const CrossResonanceParams& cr, const SingleQubitParams& control,
                            double t0_ns = 0.0) const;
  /// Best frame corrections and axis for a 4 x 4 qubit block.
  FrameFit fit_frame(const dynamics::Matrix& block4) const;
  /// Dressed-frame propagator including virtual-Z corrections from `cr`.
  dynamics::Matrix corrected_gate(const CrossResonanceParams& cr,
                                  const SingleQubitParams& control, double t0_ns = 0.0) const;
  /// Average gate fidelity of the corrected gate against ZX90 about x.
  double gate_fidelity(const CrossResonanceParams& cr, const SingleQubitParams& control) const;

  /// Coarse amplitude guess from a weak-drive linear extrapolation.
  double rough_amplitude(const CrossResonanceParams& cr, const SingleQubitParams& control) const;

  /// (ZX90)^(2N-1), N = 1..5, tuned parameter: CR amplitude.
  PingPongTrain amplitude_train(const CrossResonanceParams& base, const SingleQubitParams& control,
                                const SingleQubitParams& target) const;
  /// X90_t [ZX90 ZX90 X180_t]^N Y90_t, tuned parameter: CR phase.
  PingPongTrain phase_train(const CrossResonanceParams& base, const SingleQubitParams& control,
                            const SingleQubitParams& target) const;

  CalibrationResult calibrate_amplitude(CalibrationStore& store) const;
  CalibrationResult calibrate_phase(CalibrationStore& store) const;

  /// Dense-sweep oracle: amplitude whose corrected control-|0> block rotates by pi/2.
  double oracle_amplitude(const CrossResonanceParams& base, const SingleQubitParams& control,
                          double lo_MHz, double hi_MHz) const;
  /// Oracle: CR phase at which the corrected control-|0> target rotation axis
  /// is x, from the simulated process.
  double oracle_phase(const CrossResonanceParams& base, const SingleQubitParams& control) const;
  /// Rotation angle of the control-|0> block after the frame corrections.
  double zx_angle(const CrossResonanceParams& cr, const SingleQubitParams& control) const;
  /// Fitted axis of the echoed primitive at the given parameters.
  FrameFit tomography(const CrossResonanceParams& cr, const SingleQubitParams& control) const;

  /// +1 when the fitted axis advances with the CR drive phase, else -1.
  int axis_slope(const CrossResonanceParams& base, const SingleQubitParams& control) const;

  const std::string& edge() const { return edge_; }

 private:
  /// Excited probability of the target after a dressed-frame sequence.
  double target_excited(const dynamics::Matrix& u) const;
  dynamics::Matrix target_pulse(const SingleQubitParams& target, SingleQubitGate gate,
                                double t0_ns) const;

  const dynamics::PulseSimulator& sim_;
  std::string edge_, control_name_, target_name_;
  CalibrationOptions options_;
};

}  // namespace qlattice::calibration
