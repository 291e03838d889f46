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
#include <string_view>
#include <vector>

#include "qlattice/dynamics/hamiltonian.hpp"

namespace qlattice::dynamics {

/// Exact target unitaries.  Single-qubit labels: I, X90, X-90, Y90, Y-90,
/// X180, X-180, Y180, Y-180 (rotation exp(-i theta sigma / 2)).  Two-qubit
/// labels: ZX90 = exp(-i pi/4 Z(x)X) and ZX-90, with the first qubit as
/// the control.
Matrix ideal_gate_unitary(std::string_view label);

/// Qubit-subspace block (levels 0 and 1 of every transmon) of an operator
/// on the full transmon space, ordered like the full basis.
Matrix qubit_subspace(const Matrix& u, int levels, int n_transmons);

/// Average gate fidelity between a (possibly leaky) subspace block U and a
/// unitary V: (Tr(M M^dag) + |Tr M|^2) / (d (d + 1)) with M = V^dag U.
double average_gate_fidelity(const Matrix& u_sub, const Matrix& v);

/// Moves a propagator over [t0, t1] from the bare rotating basis into the
/// dressed computational basis: W(t1) U W(t0)^dag with
/// W(t) = e^{i 2 pi F t} S^dag e^{-i 2 pi F t}, F = sum_k F_k n_k.
Matrix to_dressed_frame(const HamiltonianModel& model, const Matrix& u, double t0_ns,
                        double t1_ns);

/// Rotation content of a 2 x 2 block after removing its global phase:
/// U ~ cos(theta/2) I - i sin(theta/2) n.sigma with theta in [0, pi].
struct Rotation {
  double angle = 0.0;
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;
  /// Azimuth of the axis in the xy plane (radians).
  double azimuth() const;
};
Rotation rotation_of(const Matrix& u2);
/// Rotation angle in [0, 2 pi) on the principal branch of the determinant's
/// square root, so that angles through pi vary continuously.
double unwrapped_rotation_angle(const Matrix& u2);

/// Diagonal single-qubit rotation exp(-i theta Z / 2) on qubit k of n.
Matrix qubit_z_rotation(int n_qubits, int k, double theta);
/// Embeds a single-qubit unitary on qubit k of an n-qubit register.
Matrix embed_single_qubit(const Matrix& u, int n_qubits, int k);

}  // namespace qlattice::dynamics
