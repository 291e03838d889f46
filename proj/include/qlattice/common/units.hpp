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

// Unit conventions used throughout: time in ns, frequency in GHz (cycles per
// ns), so 2*pi*f*t is a phase in radians.  Config-facing quantities keep the
// units the device tables use (MHz, kHz, us, ms, nA, fF) and convert at the
// boundary.

namespace qlattice::units {

inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kReducedPlanck = kPlanck / (2.0 * 3.14159265358979323846);
inline constexpr double kFluxQuantum = kPlanck / (2.0 * kElementaryCharge);  // Wb

inline constexpr double kMHzToGHz = 1e-3;
inline constexpr double kGHzToMHz = 1e3;
inline constexpr double kUsToNs = 1e3;
inline constexpr double kNsToUs = 1e-3;

}  // namespace qlattice::units
