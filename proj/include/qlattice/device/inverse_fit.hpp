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

#include "qlattice/device/transmon.hpp"

namespace qlattice::device {

struct InverseFitResult {
  TransmonCircuit circuit;
  TransmonSpectrum spectrum;
  int iterations = 0;
};

/// Finds (I_c, C_sigma) whose charge-basis spectrum reproduces the given f01
/// and anharmonicity.  Damped Newton on log-parameters with a finite-difference
/// Jacobian; `guess` seeds the search.
InverseFitResult fit_circuit_to_spectrum(double f01_GHz, double anharmonicity_MHz,
                                         const TransmonCircuit& guess,
                                         double relative_tolerance = 1e-7,
                                         int max_iterations = 50);

}  // namespace qlattice::device
