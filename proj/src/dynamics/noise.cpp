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

#include "qlattice/dynamics/noise.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Column-stacked superoperator of D[L] = L . L^dag - {L^dag L, .} / 2.
Matrix dissipator_superoperator(const Matrix& l) {
  const Matrix id = Matrix::Identity(l.rows(), l.cols());
  const Matrix ldl = l.adjoint() * l;
  Matrix out = Eigen::kroneckerProduct(l.conjugate(), l).eval();
  out -= 0.5 * Eigen::kroneckerProduct(id, ldl).eval();
  out -= 0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
  return out;
}

}  // namespace

NoiseChannels NoiseChannels::none(int n_transmons) {
  NoiseChannels out;
  out.t1_us.assign(n_transmons, kInf);
  out.t2echo_us.assign(n_transmons, kInf);
  return out;
}

void NoiseChannels::validate(int n_transmons) const {
  if (static_cast<int>(t1_us.size()) != n_transmons ||
      static_cast<int>(t2echo_us.size()) != n_transmons)
    throw ValidationError("noise needs T1 and T2echo for every transmon");
  for (int k = 0; k < n_transmons; ++k) {
    if (!(t1_us[k] > 0.0) || !(t2echo_us[k] > 0.0))
      throw ValidationError(fmt::format("transmon {}: T1 and T2echo must be positive", k));
    if (std::isfinite(t1_us[k]) && t2echo_us[k] > 2.0 * t1_us[k] * (1.0 + 1e-12))
      throw ValidationError(fmt::format(
          "transmon {}: T2echo = {} us exceeds 2 T1 = {} us", k, t2echo_us[k],
          2.0 * t1_us[k]));
  }
}

double NoiseChannels::tphi_us(int k) const {
  const double inv = 1.0 / t2echo_us[k] - 0.5 / t1_us[k];
  return inv > 1e-15 ? 1.0 / inv : kInf;
}

double NoiseChannels::relaxation_rate(int k) const {
  return std::isfinite(t1_us[k]) ? 1e-3 / t1_us[k] : 0.0;
}

double NoiseChannels::dephasing_rate(int k) const {
  const double tphi = tphi_us(k);
  return std::isfinite(tphi) ? 2e-3 / tphi : 0.0;
}

bool NoiseChannels::silent() const {
  for (std::size_t k = 0; k < t1_us.size(); ++k)
    if (relaxation_rate(static_cast<int>(k)) > 0.0 ||
        dephasing_rate(static_cast<int>(k)) > 0.0)
      return false;
  return true;
}

Matrix local_dissipator_generator(int levels, double relaxation_rate,
                                  double dephasing_rate) {
  Matrix a = Matrix::Zero(levels, levels);
  Matrix n = Matrix::Zero(levels, levels);
  for (int l = 1; l < levels; ++l) {
    a(l - 1, l) = std::sqrt(static_cast<double>(l));
    n(l, l) = l;
  }
  return relaxation_rate * dissipator_superoperator(a) +
         dephasing_rate * dissipator_superoperator(n);
}

DissipatorStep::DissipatorStep(const HamiltonianModel& model,
                               const NoiseChannels& noise, double dt_ns)
    : levels_(model.levels()), n_(model.n_transmons()) {
  noise.validate(n_);
  for (int k = 0; k < n_; ++k) {
    const double g1 = noise.relaxation_rate(k);
    const double gp = noise.dephasing_rate(k);
    if (g1 == 0.0 && gp == 0.0) continue;
    const Matrix gen = local_dissipator_generator(levels_, g1, gp) * dt_ns;
    transmon_.push_back(k);
    maps_.push_back(gen.exp());
  }
}

void DissipatorStep::apply(Matrix& rho) const {
  const int d = static_cast<int>(rho.rows());
  const int L = levels_;
  Vector local_in(L * L), local_out(L * L);
  for (std::size_t m = 0; m < maps_.size(); ++m) {
    int stride = 1;
    for (int j = n_ - 1; j > transmon_[m]; --j) stride *= L;
    // Visit every (row, column) pair whose transmon-k digits are zero and
    // apply the local map to the L x L block it anchors.
    for (int ri = 0; ri < d; ++ri) {
      if ((ri / stride) % L != 0) continue;
      for (int ci = 0; ci < d; ++ci) {
        if ((ci / stride) % L != 0) continue;
        for (int b = 0; b < L; ++b)
          for (int a = 0; a < L; ++a)
            local_in(a + L * b) = rho(ri + a * stride, ci + b * stride);
        local_out.noalias() = maps_[m] * local_in;
        for (int b = 0; b < L; ++b)
          for (int a = 0; a < L; ++a)
            rho(ri + a * stride, ci + b * stride) = local_out(a + L * b);
      }
    }
  }
}

Matrix lindblad_generator(const Matrix& hamiltonian_GHz, const HamiltonianModel& model,
                          const NoiseChannels& noise) {
  const int d = model.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Complex minus_i(0.0, -2.0 * std::numbers::pi);
  Matrix gen = minus_i * (Eigen::kroneckerProduct(id, hamiltonian_GHz).eval() -
                          Eigen::kroneckerProduct(hamiltonian_GHz.transpose(), id).eval());
  noise.validate(model.n_transmons());
  for (int k = 0; k < model.n_transmons(); ++k) {
    const double g1 = noise.relaxation_rate(k);
    const double gp = noise.dephasing_rate(k);
    if (g1 > 0.0) gen += g1 * dissipator_superoperator(model.lowering(k));
    if (gp > 0.0) gen += gp * dissipator_superoperator(model.number(k));
  }
  return gen;
}

}  // namespace qlattice::dynamics
