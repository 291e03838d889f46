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
#include <string>

#include "qlattice/dynamics/types.hpp"

namespace qlattice::benchmarking {

/// i^phase * X^x * Z^z on up to 8 qubits; bit k of x/z addresses qubit k,
/// with qubit 0 the most significant tensor factor.
struct Pauli {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  int phase = 0;  ///< exponent of i, mod 4

  /// Hermitian basis element with sign +1 (Y = i X Z per qubit).
  static Pauli hermitian(std::uint32_t x, std::uint32_t z);
  /// Single-qubit generator 'X', 'Y' or 'Z' on qubit q.
  static Pauli single(char which, int q);

  bool operator==(const Pauli& o) const {
    return x == o.x && z == o.z && ((phase - o.phase) % 4 + 4) % 4 == 0;
  }
  /// Label like "+XZ" for an n-qubit string (requires a Hermitian element).
  std::string label(int n) const;
};

/// Operator product a * b.
Pauli operator*(const Pauli& a, const Pauli& b);
bool commutes(const Pauli& a, const Pauli& b);
int normalized_phase(int phase);

/// Dense 2^n x 2^n matrix.
dynamics::Matrix pauli_matrix(const Pauli& p, int n_qubits);

}  // namespace qlattice::benchmarking
