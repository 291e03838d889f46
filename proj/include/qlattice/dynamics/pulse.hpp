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

#include <complex>
#include <string_view>
#include <vector>

namespace qlattice::dynamics {

enum class PulseShape {
  kGaussian,        ///< lifted Gaussian over the full duration
  kGaussianSquare,  ///< flat top with lifted-Gaussian rise and fall edges
};

std::string_view to_string(PulseShape shape);
PulseShape pulse_shape_from_string(std::string_view name);

/// One shaped, phase-referenced microwave pulse on a transmon drive line.
///
/// The in-phase envelope peaks at `amplitude_MHz` (the Rabi rate: a constant
/// drive of 1 MHz rotates a qubit by 2 pi per microsecond).  The quadrature is
/// drag_coefficient * sigma * d(in-phase)/dt, and the same coefficient sets a
/// first-order dynamic frame detuning pi * sigma * drag * in_phase^2 that
/// keeps the rotation axis fixed while leakage is cancelled.  The carrier is
/// the dressed 0-1 frequency of `frame_transmon` plus `ssb_detuning_MHz`;
/// its phase is referenced to absolute time, as with a free-running
/// single-sideband source.
struct PulseEnvelope {
  PulseShape shape = PulseShape::kGaussian;
  double duration_ns = 0.0;
  /// Gaussian width; 0 selects duration / 4 (kGaussian) or rise / 2 (edges).
  double sigma_ns = 0.0;
  /// Edge length of kGaussianSquare.
  double rise_ns = 0.0;
  double amplitude_MHz = 0.0;
  double drag_coefficient = 0.0;
  double phase_rad = 0.0;
  double ssb_detuning_MHz = 0.0;
  int channel = 0;
  /// Transmon whose frequency the carrier follows; -1 means `channel`.
  int frame_transmon = -1;

  void validate() const;
  double effective_sigma() const;
  int carrier_transmon() const { return frame_transmon < 0 ? channel : frame_transmon; }
  /// In-phase envelope (MHz) at time t after pulse start; zero outside.
  double in_phase(double t_ns) const;
  /// Time derivative of the in-phase envelope (MHz/ns).
  double in_phase_derivative(double t_ns) const;
  /// Complex envelope (in-phase + i quadrature) in MHz.
  std::complex<double> complex_envelope(double t_ns) const;
  /// DRAG frame detuning in MHz.
  double detuning_MHz(double t_ns) const;
  /// Integral of the in-phase envelope in MHz*ns; rotation angle is
  /// 2 pi * area * 1e-3.
  double area_MHz_ns() const;
};

struct ScheduledPulse {
  double start_ns = 0.0;
  PulseEnvelope pulse;
  double end_ns() const { return start_ns + pulse.duration_ns; }
};

/// Instantaneous frame change: Rz(angle) on one transmon's qubit levels.
struct VirtualZ {
  double time_ns = 0.0;
  int transmon = 0;
  double angle_rad = 0.0;
};

/// Time-ordered list of pulses, virtual Z updates and alignment barriers.
struct ControlSequence {
  std::vector<ScheduledPulse> pulses;
  std::vector<VirtualZ> virtual_z;
  std::vector<double> barriers_ns;

  void add(double start_ns, const PulseEnvelope& pulse) {
    pulses.push_back({start_ns, pulse});
  }
  double duration_ns() const;
  /// Rejects overlapping pulses on one channel and channels >= n_channels.
  void validate(int n_channels) const;
};

}  // namespace qlattice::dynamics
