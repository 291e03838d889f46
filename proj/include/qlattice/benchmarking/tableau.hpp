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

#include "qlattice/benchmarking/pauli.hpp"

namespace qlattice::benchmarking {

/// Clifford operation C stored as the images C X_j C^dag and C Z_j C^dag of
/// the generators; equality is equality of the maps (global phase ignored).
class Tableau {
 public:
  explicit Tableau(int n_qubits = 1);
  static Tableau identity(int n_qubits) { return Tableau(n_qubits); }
  /// Tableau of a dense Clifford unitary; throws ValidationError if U does
  /// not map Paulis to Paulis.
  static Tableau from_unitary(const dynamics::Matrix& u, int n_qubits);

  int n_qubits() const { return n_; }
  const Pauli& image_x(int q) const { return images_[q]; }
  const Pauli& image_z(int q) const { return images_[n_ + q]; }

  /// C P C^dag.
  Pauli apply(const Pauli& p) const;
  /// `next` after this: P -> next(this(P)).
  Tableau then(const Tableau& next) const;
  Tableau inverse() const;
  /// Injective packing of the map, for hashing (n <= 3).
  std::uint64_t key() const;
  bool operator==(const Tableau& o) const { return key() == o.key(); }

 private:
  int n_;
  std::vector<Pauli> images_;
};

}  // namespace qlattice::benchmarking
