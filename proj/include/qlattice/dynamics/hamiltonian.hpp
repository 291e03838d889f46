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

#include "qlattice/dynamics/types.hpp"

namespace qlattice::dynamics {

/// One Duffing-oscillator transmon.
struct TransmonMode {
  double f01_GHz = 0.0;
  double anharmonicity_MHz = 0.0;
};

/// Static exchange a_i^dag a_j + h.c. left behind by an eliminated bus.
struct ExchangeEdge {
  int a = 0;
  int b = 0;
  double J_MHz = 0.0;
};

/// Static longitudinal coupling zeta * n_a * n_b (shifts |11> by zeta).
/// Used to inject crosstalk between otherwise independent subsystems.
struct ZZEdge {
  int a = 0;
  int b = 0;
  double zeta_MHz = 0.0;
};

/// Multi-transmon Hamiltonian, immutable after construction.
///
/// Basis ordering: transmon 0 is the most significant digit, so the index of
/// |n_0 n_1 ...> is sum_k n_k L^(N-1-k).  All energies are in GHz; the
/// integrators multiply by 2 pi to obtain rad/ns.
///
/// Every transmon k has a rotating-frame frequency (the dressed 0-1
/// transition by default).  In that frame the static Hamiltonian is
///   sum_k (f_k - F_k) n_k + (alpha_k / 2) n_k (n_k - 1)
///   + sum_edges J (e^{i 2 pi (F_a - F_b) t} a_a^dag a_b + h.c.)
///   + sum_zz zeta n_a n_b.
class HamiltonianModel {
 public:
  HamiltonianModel(std::vector<TransmonMode> modes, std::vector<ExchangeEdge> edges,
                   int levels = 3, std::vector<ZZEdge> zz = {});

  int n_transmons() const { return static_cast<int>(modes_.size()); }
  int levels() const { return levels_; }
  int dim() const { return dim_; }
  const std::vector<TransmonMode>& modes() const { return modes_; }
  const std::vector<ExchangeEdge>& edges() const { return edges_; }
  const std::vector<ZZEdge>& zz_edges() const { return zz_; }

  /// Dressed 0-1 transition of transmon k (eigenstate with maximal overlap
  /// on the bare single excitation).
  double dressed_f01(int k) const { return dressed_f01_[k]; }
  const std::vector<double>& frame() const { return frame_; }
  /// Copy of this model with a different rotating-frame choice.
  HamiltonianModel with_frame(std::vector<double> frame_GHz) const;

  const Matrix& lowering(int k) const { return lowering_[k]; }
  const Matrix& number(int k) const { return number_[k]; }
  /// Diagonal of n_k as real numbers.
  const Eigen::VectorXd& number_diagonal(int k) const { return number_diag_[k]; }
  /// Level of transmon k in basis state `index`.
  int level_of(int index, int k) const;

  /// Lab-frame static Hamiltonian (GHz).
  Matrix lab_hamiltonian() const;
  /// Dressed eigenbasis: column j is the eigenvector assigned to bare state j,
  /// phased so that its overlap with the bare state is real and positive.
  const Matrix& dressed_basis() const { return dressed_basis_; }
  /// Static part of the rotating-frame Hamiltonian at time t (GHz).
  Matrix rotating_static(double t_ns) const;
  /// Transmons connected to k through exchange edges (including k), sorted.
  std::vector<int> component(int k) const;
  /// True when transmons a and b share a J-connected component.
  bool connected(int a, int b) const;

 private:
  void build();

  std::vector<TransmonMode> modes_;
  std::vector<ExchangeEdge> edges_;
  std::vector<ZZEdge> zz_;
  int levels_;
  int dim_ = 1;
  std::vector<double> frame_;
  std::vector<double> dressed_f01_;
  std::vector<Matrix> lowering_;
  std::vector<Matrix> number_;
  std::vector<Eigen::VectorXd> number_diag_;
  std::vector<int> component_id_;
  Matrix dressed_basis_;
};

/// Diagonal of exp(i 2 pi t0 sum_k c_k n_k) with c_k = F_k - carrier for the
/// transmons in `members` (others untouched).  Conjugating a propagator
/// computed from t = 0 by this diagonal moves it to start time t0, provided
/// every drive inside the component uses the same carrier.
Vector frame_shift_diagonal(const HamiltonianModel& model,
                            const std::vector<int>& members, double carrier_GHz,
                            double t0_ns);

/// Diagonal of the instantaneous rotation exp(+i theta n_k), which acts as
/// Rz(theta) = exp(-i theta Z / 2) on the qubit levels up to a global phase
/// (a virtual Z).
Vector virtual_z_diagonal(const HamiltonianModel& model, int transmon,
                          double angle_rad);

}  // namespace qlattice::dynamics
