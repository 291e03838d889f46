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

#include <cstddef>
#include <cstdint>

#include "qlattice/device/transmon.hpp"

namespace qlattice::device {

struct SpreadOptions {
  double sigma_ic_fraction = 0.10;
  double sigma_c_fraction = 0.0;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
  int charge_cutoff = kDefaultChargeCutoff;
  unsigned threads = 0;
};

struct SpreadStatistics {
  std::size_t n_samples = 0;
  double mean_f01_GHz = 0.0;
  double sigma_f01_MHz = 0.0;
  double two_sigma_width_MHz = 0.0;
  double mean_anharmonicity_MHz = 0.0;
  /// Fraction of (control, target) pairs of independent samples whose target
  /// lands inside the control's cross-resonance window.
  double window_hit_probability = 0.0;
};

/// Fabrication-spread Monte Carlo: I_c and C_sigma drawn from independent
/// normals around the design, each sample diagonalized.  Sample i uses its own
/// counter-based stream, so statistics are identical for any thread count.
SpreadStatistics frequency_spread_monte_carlo(const TransmonCircuit& design,
                                              const SpreadOptions& options);

/// The fluctuation figure read two ways: as one standard deviation, and as a
/// full +/-2 sigma range (sigma = fraction / 4).
struct SpreadReadings {
  SpreadStatistics as_sigma;
  SpreadStatistics as_full_range;
};

SpreadReadings frequency_spread_readings(const TransmonCircuit& design,
                                         const SpreadOptions& options);

}  // namespace qlattice::device
