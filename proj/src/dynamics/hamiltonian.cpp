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

#include "qlattice/dynamics/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <set>
#include <utility>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

HamiltonianModel::HamiltonianModel(std::vector<TransmonMode> modes,
                                   std::vector<ExchangeEdge> edges, int levels,
                                   std::vector<ZZEdge> zz)
    : modes_(std::move(modes)), edges_(std::move(edges)), zz_(std::move(zz)),
      levels_(levels) {
  if (modes_.empty()) throw ValidationError("model needs at least one transmon");
  if (levels_ < 2) throw ValidationError("model needs at least two levels");
  const int n = n_transmons();
  for (const auto& m : modes_)
    if (!(m.f01_GHz > 0.0)) throw ValidationError("transmon f01 must be positive");
  std::set<std::pair<int, int>> seen;
  auto check_pair = [&](int a, int b, const char* what) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw ValidationError(fmt::format("{} edge ({}, {}) is invalid", what, a, b));
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
      throw ValidationError(fmt::format("{} edge ({}, {}) is duplicated", what, a, b));
  };
  for (const auto& e : edges_) check_pair(e.a, e.b, "exchange");
  seen.clear();
  for (const auto& e : zz_) check_pair(e.a, e.b, "zz");
  for (int k = 0; k < n; ++k) dim_ *= levels_;
  build();
}

HamiltonianModel HamiltonianModel::with_frame(std::vector<double> frame_GHz) const {
  if (static_cast<int>(frame_GHz.size()) != n_transmons())
    throw ValidationError("frame needs one frequency per transmon");
  HamiltonianModel copy = *this;
  copy.frame_ = std::move(frame_GHz);
  return copy;
}

int HamiltonianModel::level_of(int index, int k) const {
  for (int j = n_transmons() - 1; j > k; --j) index /= levels_;
  return index % levels_;
}

void HamiltonianModel::build() {
  const int n = n_transmons();
  Matrix a_single = Matrix::Zero(levels_, levels_);
  for (int l = 1; l < levels_; ++l) a_single(l - 1, l) = std::sqrt(static_cast<double>(l));
  lowering_.assign(n, Matrix());
  number_.assign(n, Matrix());
  number_diag_.assign(n, Eigen::VectorXd());
  for (int k = 0; k < n; ++k) {
    Matrix a = Matrix::Zero(dim_, dim_);
    Eigen::VectorXd nd(dim_);
    for (int i = 0; i < dim_; ++i) {
      const int l = level_of(i, k);
      nd(i) = l;
      if (l > 0) {
        int stride = 1;
        for (int j = n - 1; j > k; --j) stride *= levels_;
        a(i - stride, i) = std::sqrt(static_cast<double>(l));
      }
    }
    lowering_[k] = a;
    number_diag_[k] = nd;
    number_[k] = nd.cast<Complex>().asDiagonal();
  }

  // Components of the exchange graph.
  component_id_.resize(n);
  for (int k = 0; k < n; ++k) component_id_[k] = k;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : edges_) {
      const int m = std::min(component_id_[e.a], component_id_[e.b]);
      if (component_id_[e.a] != m || component_id_[e.b] != m) {
        component_id_[e.a] = component_id_[e.b] = m;
        changed = true;
      }
    }
  }

  // Dressed states: each bare state is matched to the eigenvector with the
  // largest overlap.  Exchange only mixes states of equal excitation number,
  // so the assignment is unambiguous in the dispersive regime.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(lab_hamiltonian());
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("static Hamiltonian diagonalization failed");
  const Matrix& vecs = solver.eigenvectors();
  dressed_basis_ = Matrix::Zero(dim_, dim_);
  Eigen::VectorXd energies(dim_);
  std::vector<bool> used(dim_, false);
  for (int j = 0; j < dim_; ++j) {
    int best = -1;
    double best_overlap = -1.0;
    for (int e = 0; e < dim_; ++e) {
      if (used[e]) continue;
      const double ov = std::norm(vecs(j, e));
      if (ov > best_overlap) {
        best_overlap = ov;
        best = e;
      }
    }
    used[best] = true;
    const Complex phase = vecs(j, best) / std::abs(vecs(j, best));
    dressed_basis_.col(j) = vecs.col(best) / phase;
    energies(j) = solver.eigenvalues()(best);
  }
  dressed_f01_.resize(n);
  for (int k = 0; k < n; ++k) {
    int idx = 1;
    for (int j = n - 1; j > k; --j) idx *= levels_;
    dressed_f01_[k] = energies(idx) - energies(0);
  }
  frame_ = dressed_f01_;
}

Matrix HamiltonianModel::lab_hamiltonian() const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (int k = 0; k < n_transmons(); ++k) {
    const double alpha = modes_[k].anharmonicity_MHz * 1e-3;
    for (int i = 0; i < dim_; ++i) {
      const double l = number_diag_[k](i);
      h(i, i) += modes_[k].f01_GHz * l + 0.5 * alpha * l * (l - 1.0);
    }
  }
  for (const auto& e : edges_) {
    const Matrix hop = lowering_[e.a].adjoint() * lowering_[e.b];
    h += (e.J_MHz * 1e-3) * (hop + hop.adjoint());
  }
  for (const auto& z : zz_)
    for (int i = 0; i < dim_; ++i)
      h(i, i) += z.zeta_MHz * 1e-3 * number_diag_[z.a](i) * number_diag_[z.b](i);
  return h;
}

Matrix HamiltonianModel::rotating_static(double t_ns) const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (int k = 0; k < n_transmons(); ++k) {
    const double alpha = modes_[k].anharmonicity_MHz * 1e-3;
    const double detuning = modes_[k].f01_GHz - frame_[k];
    for (int i = 0; i < dim_; ++i) {
      const double l = number_diag_[k](i);
      h(i, i) += detuning * l + 0.5 * alpha * l * (l - 1.0);
    }
  }
  for (const auto& e : edges_) {
    const Complex phase =
        std::polar(1.0, kTwoPi * (frame_[e.a] - frame_[e.b]) * t_ns);
    const Matrix hop = (e.J_MHz * 1e-3) * phase *
                       (lowering_[e.a].adjoint() * lowering_[e.b]);
    h += hop + hop.adjoint();
  }
  for (const auto& z : zz_)
    for (int i = 0; i < dim_; ++i)
      h(i, i) += z.zeta_MHz * 1e-3 * number_diag_[z.a](i) * number_diag_[z.b](i);
  return h;
}

std::vector<int> HamiltonianModel::component(int k) const {
  std::vector<int> out;
  for (int j = 0; j < n_transmons(); ++j)
    if (component_id_[j] == component_id_[k]) out.push_back(j);
  return out;
}

bool HamiltonianModel::connected(int a, int b) const {
  return component_id_[a] == component_id_[b];
}

Vector frame_shift_diagonal(const HamiltonianModel& model,
                            const std::vector<int>& members, double carrier_GHz,
                            double t0_ns) {
  Eigen::VectorXd phase = Eigen::VectorXd::Zero(model.dim());
  for (int k : members)
    phase += kTwoPi * t0_ns * (model.frame()[k] - carrier_GHz) *
             model.number_diagonal(k);
  Vector out(model.dim());
  for (int i = 0; i < model.dim(); ++i) out(i) = std::polar(1.0, phase(i));
  return out;
}

Vector virtual_z_diagonal(const HamiltonianModel& model, int transmon,
                          double angle_rad) {
  Vector out(model.dim());
  for (int i = 0; i < model.dim(); ++i)
    out(i) = std::polar(1.0, angle_rad * model.number_diagonal(transmon)(i));
  return out;
}

}  // namespace qlattice::dynamics
