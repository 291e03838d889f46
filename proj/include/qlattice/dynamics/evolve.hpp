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

#include "qlattice/dynamics/hamiltonian.hpp"
#include "qlattice/dynamics/noise.hpp"
#include "qlattice/dynamics/propagator.hpp"
#include "qlattice/dynamics/pulse.hpp"

namespace qlattice::dynamics {

/// Density matrix of a computational basis state given per-transmon levels.
Matrix basis_density_matrix(const HamiltonianModel& model, const std::vector<int>& levels);
Matrix ground_density_matrix(const HamiltonianModel& model);

double purity(const Matrix& rho);

/// Integrates the sequence from t = 0 to its end.  Pulses may overlap on
/// different channels; virtual Z updates apply at their time stamps.  With
/// `noise` the Lindblad dissipators enter by Strang splitting at every step.
/// When options.verify is set the run is repeated at half the step until the
/// final states agree to options.tolerance (ConvergenceError at min_dt_ns).
Matrix evolve(const HamiltonianModel& model, const ControlSequence& sequence,
              const Matrix& rho0, const NoiseChannels* noise = nullptr,
              const IntegratorOptions& options = {});

/// Coherent propagator of a whole sequence (no noise), same conventions.
Matrix sequence_unitary(const HamiltonianModel& model, const ControlSequence& sequence,
                        const IntegratorOptions& options = {});

}  // namespace qlattice::dynamics
