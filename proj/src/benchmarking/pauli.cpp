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

#include "qlattice/benchmarking/pauli.hpp"

#include <bit>
#include <unsupported/Eigen/KroneckerProduct>

#include "qlattice/common/errors.hpp"

namespace qlattice::benchmarking {

int normalized_phase(int phase) { return ((phase % 4) + 4) % 4; }

Pauli Pauli::hermitian(std::uint32_t x, std::uint32_t z) {
  return {x, z, normalized_phase(std::popcount(x & z))};
}

Pauli Pauli::single(char which, int q) {
  const std::uint32_t bit = 1u << q;
  switch (which) {
    case 'X': return hermitian(bit, 0);
    case 'Y': return hermitian(bit, bit);
    case 'Z': return hermitian(0, bit);
    default: throw ValidationError("Pauli generator must be X, Y or Z");
  }
}

Pauli operator*(const Pauli& a, const Pauli& b) {
  // X^xa Z^za X^xb Z^zb = (-1)^{|za & xb|} X^{xa ^ xb} Z^{za ^ zb}
  return {a.x ^ b.x, a.z ^ b.z,
          normalized_phase(a.phase + b.phase + 2 * std::popcount(a.z & b.x))};
}

bool commutes(const Pauli& a, const Pauli& b) {
  return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) % 2 == 0;
}

std::string Pauli::label(int n) const {
  const int sign = normalized_phase(phase - std::popcount(x & z));
  if (sign % 2 != 0) throw ValidationError("Pauli is not Hermitian");
  std::string out(1, sign == 0 ? '+' : '-');
  for (int q = 0; q < n; ++q) {
    const bool bx = (x >> q) & 1u, bz = (z >> q) & 1u;
    out += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }
  return out;
}

dynamics::Matrix pauli_matrix(const Pauli& p, int n) {
  using dynamics::Matrix;
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    Matrix f = Matrix::Identity(2, 2);
    if ((p.x >> q) & 1u) f = x;
    if ((p.z >> q) & 1u) f = f * z;
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  static const dynamics::Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[normalized_phase(p.phase)] * out;
}

}  // namespace qlattice::benchmarking
