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

#include <vector>

#include "qlattice/dynamics/hamiltonian.hpp"

namespace qlattice::dynamics {

/// Per-transmon relaxation and echo coherence times.  An infinite T1 or a
/// T2echo of exactly 2 T1 switches the corresponding channel off.
struct NoiseChannels {
  std::vector<double> t1_us;
  std::vector<double> t2echo_us;

  static NoiseChannels none(int n_transmons);
  void validate(int n_transmons) const;
  /// Pure dephasing time from 1/T_phi = 1/T2echo - 1/(2 T1) (infinite when
  /// the right-hand side vanishes).
  double tphi_us(int k) const;
  /// Collapse rates in 1/ns for D[sqrt(g1) a] and D[sqrt(gphi) n].  With
  /// gphi = 2 / T_phi a qubit coherence decays at 1/(2 T1) + 1/T_phi.
  double relaxation_rate(int k) const;
  double dephasing_rate(int k) const;
  bool silent() const;
};

/// Lindblad dissipator of one transmon as an L^2 x L^2 generator acting on
/// column-stacked local density matrices (element (a, b) at a + L b).
Matrix local_dissipator_generator(int levels, double relaxation_rate,
                                  double dephasing_rate);

/// exp(dt * D) for every transmon, applied to a full density matrix.  The
/// local dissipators commute, so the product is exact.
class DissipatorStep {
 public:
  DissipatorStep(const HamiltonianModel& model, const NoiseChannels& noise,
                 double dt_ns);
  void apply(Matrix& rho) const;
  bool trivial() const { return maps_.empty(); }

 private:
  int levels_;
  int n_;
  std::vector<int> transmon_;
  std::vector<Matrix> maps_;
};

/// Full Lindbladian for a static Hamiltonian (GHz), as a d^2 x d^2 matrix.
/// Only intended for small subsystems (d <= 9).
Matrix lindblad_generator(const Matrix& hamiltonian_GHz, const HamiltonianModel& model,
                          const NoiseChannels& noise);

}  // namespace qlattice::dynamics
