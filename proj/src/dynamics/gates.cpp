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

#include "qlattice/dynamics/gates.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

namespace {

Matrix pauli(char which) {
  Matrix p = Matrix::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (which) {
    case 'I':
      p = Matrix::Identity(2, 2);
      break;
    case 'X':
      p(0, 1) = p(1, 0) = 1.0;
      break;
    case 'Y':
      p(0, 1) = -i;
      p(1, 0) = i;
      break;
    case 'Z':
      p(0, 0) = 1.0;
      p(1, 1) = -1.0;
      break;
  }
  return p;
}

Matrix rotation(char axis, double theta) {
  const Complex i(0.0, 1.0);
  return std::cos(theta / 2.0) * Matrix::Identity(2, 2) -
         i * std::sin(theta / 2.0) * pauli(axis);
}

}  // namespace

Matrix ideal_gate_unitary(std::string_view label) {
  constexpr double pi = std::numbers::pi;
  const Complex i(0.0, 1.0);
  if (label == "I") return Matrix::Identity(2, 2);
  if (label == "X90") return rotation('X', pi / 2);
  if (label == "X-90") return rotation('X', -pi / 2);
  if (label == "Y90") return rotation('Y', pi / 2);
  if (label == "Y-90") return rotation('Y', -pi / 2);
  if (label == "X180") return rotation('X', pi);
  if (label == "X-180") return rotation('X', -pi);
  if (label == "Y180") return rotation('Y', pi);
  if (label == "Y-180") return rotation('Y', -pi);
  if (label == "ZX90" || label == "ZX-90") {
    const double s = label == "ZX90" ? 1.0 : -1.0;
    const Matrix zx = Eigen::kroneckerProduct(pauli('Z'), pauli('X')).eval();
    return std::cos(pi / 4) * Matrix::Identity(4, 4) - i * s * std::sin(pi / 4) * zx;
  }
  throw ValidationError(fmt::format("unknown gate label '{}'", label));
}

Matrix qubit_subspace(const Matrix& u, int levels, int n) {
  std::vector<int> index;
  for (int q = 0; q < (1 << n); ++q) {
    int idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * levels + ((q >> (n - 1 - k)) & 1);
    index.push_back(idx);
  }
  const int d = static_cast<int>(index.size());
  Matrix out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = u(index[r], index[c]);
  return out;
}

double average_gate_fidelity(const Matrix& u_sub, const Matrix& v) {
  const double d = static_cast<double>(v.rows());
  const Matrix m = v.adjoint() * u_sub;
  const double tr_mm = (m * m.adjoint()).trace().real();
  return (tr_mm + std::norm(m.trace())) / (d * (d + 1.0));
}

Matrix to_dressed_frame(const HamiltonianModel& model, const Matrix& u, double t0,
                        double t1) {
  auto w = [&](double t) {
    Vector phase(model.dim());
    for (int i = 0; i < model.dim(); ++i) {
      double f = 0.0;
      for (int k = 0; k < model.n_transmons(); ++k)
        f += model.frame()[k] * model.number_diagonal(k)(i);
      phase(i) = std::polar(1.0, 2.0 * std::numbers::pi * f * t);
    }
    return Matrix(phase.asDiagonal() * model.dressed_basis().adjoint() *
                  phase.conjugate().asDiagonal());
  };
  return w(t1) * u * w(t0).adjoint();
}

double Rotation::azimuth() const { return std::atan2(ny, nx); }

Rotation rotation_of(const Matrix& u2) {
  if (u2.rows() != 2 || u2.cols() != 2) throw ValidationError("rotation_of needs 2x2");
  const Complex det = u2.determinant();
  Matrix u = u2 / std::sqrt(det);
  Complex c = 0.5 * (u(0, 0) + u(1, 1));
  if (c.real() < 0.0) {
    u = -u;
    c = -c;
  }
  const Complex i(0.0, 1.0);
  const double sx = (i * 0.5 * (u(0, 1) + u(1, 0))).real();
  const double sy = (0.5 * (u(1, 0) - u(0, 1))).real();
  const double sz = (i * 0.5 * (u(0, 0) - u(1, 1))).real();
  const double s = std::sqrt(sx * sx + sy * sy + sz * sz);
  Rotation r;
  r.angle = 2.0 * std::atan2(s, c.real());
  if (s > 0.0) {
    r.nx = sx / s;
    r.ny = sy / s;
    r.nz = sz / s;
  }
  return r;
}

double unwrapped_rotation_angle(const Matrix& u2) {
  if (u2.rows() != 2 || u2.cols() != 2) throw ValidationError("rotation angle needs 2x2");
  const Matrix u = u2 / std::sqrt(u2.determinant());
  const Complex i(0.0, 1.0);
  const double c = (0.5 * (u(0, 0) + u(1, 1))).real();
  const double sx = (i * 0.5 * (u(0, 1) + u(1, 0))).real();
  const double sy = (0.5 * (u(1, 0) - u(0, 1))).real();
  const double sz = (i * 0.5 * (u(0, 0) - u(1, 1))).real();
  return 2.0 * std::atan2(std::sqrt(sx * sx + sy * sy + sz * sz), c);
}

Matrix embed_single_qubit(const Matrix& u, int n, int k) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Matrix f = q == k ? u : Matrix(Matrix::Identity(2, 2));
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

Matrix qubit_z_rotation(int n, int k, double theta) {
  return embed_single_qubit(rotation('Z', theta), n, k);
}

}  // namespace qlattice::dynamics
