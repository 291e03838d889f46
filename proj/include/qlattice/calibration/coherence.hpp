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

#include "qlattice/calibration/store.hpp"
#include "qlattice/dynamics/propagator.hpp"

namespace qlattice::calibration {

/// Result of fitting A exp(-t / T) + B to a decay trace.
struct DecayTime {
  double value_us = 0.0;   ///< +inf when no decay is resolvable
  double stderr_us = 0.0;
  double amplitude = 0.0;  ///< A
  double offset = 0.0;     ///< B
  bool finite = true;
};

struct CoherenceFit {
  DecayTime t1;
  DecayTime t2echo;
};

struct CoherenceTrace {
  std::vector<double> delays_us;
  std::vector<double> excited;  ///< measured P(1) per delay
};

/// `count` delays evenly spaced over [0, span_us].
std::vector<double> linear_delays_us(double span_us, int count = 81);

/// Fits A exp(-t / T) + B.  A trace whose total change is below
/// `flat_threshold` yields finite = false and T = +inf; a failed fit throws.
DecayTime fit_decay(const std::vector<double>& t_us, const std::vector<double>& y,
                    double flat_threshold = 1e-3);

/// X180, wait, read P(1) on `transmon`.  shots = 0 gives exact populations.
CoherenceTrace t1_trace(const dynamics::PulseSimulator& sim, int transmon,
                        const SingleQubitParams& params, const std::vector<double>& delays_us,
                        std::uint64_t shots, std::uint64_t seed);

/// X90 - tau/2 - X180 - tau/2 - X90, read P(1).
CoherenceTrace t2echo_trace(const dynamics::PulseSimulator& sim, int transmon,
                            const SingleQubitParams& params,
                            const std::vector<double>& delays_us, std::uint64_t shots,
                            std::uint64_t seed);

/// Requires a calibrated pi pulse in `params`.
DecayTime measure_t1(const dynamics::PulseSimulator& sim, int transmon,
                     const SingleQubitParams& params, const std::vector<double>& delays_us,
                     std::uint64_t shots, std::uint64_t seed);
DecayTime measure_t2echo(const dynamics::PulseSimulator& sim, int transmon,
                         const SingleQubitParams& params,
                         const std::vector<double>& delays_us, std::uint64_t shots,
                         std::uint64_t seed);

}  // namespace qlattice::calibration
