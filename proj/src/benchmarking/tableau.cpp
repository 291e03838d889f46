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

#include "qlattice/benchmarking/tableau.hpp"

#include <bit>
#include <cmath>

#include "qlattice/common/errors.hpp"

namespace qlattice::benchmarking {

Tableau::Tableau(int n) : n_(n) {
  if (n < 1 || n > 3) throw ValidationError("tableaux support 1 to 3 qubits");
  for (int q = 0; q < n; ++q) images_.push_back(Pauli::single('X', q));
  for (int q = 0; q < n; ++q) images_.push_back(Pauli::single('Z', q));
}

Tableau Tableau::from_unitary(const dynamics::Matrix& u, int n) {
  Tableau t(n);
  const int dim = 1 << n;
  if (u.rows() != dim) throw ValidationError("unitary size does not match qubit count");
  for (std::size_t g = 0; g < t.images_.size(); ++g) {
    const dynamics::Matrix m = u * pauli_matrix(t.images_[g], n) * u.adjoint();
    bool found = false;
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(dim) && !found; ++x)
      for (std::uint32_t z = 0; z < static_cast<std::uint32_t>(dim) && !found; ++z) {
        const Pauli b = Pauli::hermitian(x, z);
        const dynamics::Complex c = (pauli_matrix(b, n).adjoint() * m).trace() / double(dim);
        if (std::abs(std::abs(c) - 1.0) < 1e-6) {
          if (std::abs(c.imag()) > 1e-6) break;
          Pauli img = b;
          if (c.real() < 0.0) img.phase = normalized_phase(img.phase + 2);
          t.images_[g] = img;
          found = true;
        }
      }
    if (!found) throw ValidationError("unitary is not a Clifford operation");
  }
  return t;
}

Pauli Tableau::apply(const Pauli& p) const {
  Pauli out{0, 0, p.phase};
  for (int q = 0; q < n_; ++q)
    if ((p.x >> q) & 1u) out = out * images_[q];
  for (int q = 0; q < n_; ++q)
    if ((p.z >> q) & 1u) out = out * images_[n_ + q];
  return out;
}

Tableau Tableau::then(const Tableau& next) const {
  if (next.n_ != n_) throw ValidationError("tableau widths differ");
  Tableau out(n_);
  for (std::size_t g = 0; g < images_.size(); ++g) out.images_[g] = next.apply(images_[g]);
  return out;
}

Tableau Tableau::inverse() const {
  // For every Hermitian basis element B with C(B) = i^k P, C^-1(P) = i^-k B.
  Tableau out(n_);
  const std::uint32_t dim = 1u << n_;
  for (std::uint32_t x = 0; x < dim; ++x)
    for (std::uint32_t z = 0; z < dim; ++z) {
      const Pauli b = Pauli::hermitian(x, z);
      const Pauli img = apply(b);
      for (std::size_t g = 0; g < out.images_.size(); ++g) {
        const bool is_x = g < static_cast<std::size_t>(n_);
        const int q = static_cast<int>(is_x ? g : g - n_);
        const std::uint32_t bit = 1u << q;
        if (img.x == (is_x ? bit : 0u) && img.z == (is_x ? 0u : bit)) {
          Pauli inv = b;
          inv.phase = normalized_phase(b.phase - img.phase);
          out.images_[g] = inv;
        }
      }
    }
  return out;
}

std::uint64_t Tableau::key() const {
  std::uint64_t k = 0;
  for (const Pauli& p : images_) {
    k = (k << n_) | p.x;
    k = (k << n_) | p.z;
    k = (k << 2) | static_cast<std::uint64_t>(normalized_phase(p.phase));
  }
  return k;
}

}  // namespace qlattice::benchmarking
