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

#include "qlattice/device/transmon.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/units.hpp"

namespace qlattice::device {

namespace {

constexpr double kConvergenceTolerance_GHz = 1e-6;  // 1 kHz
constexpr int kMinChargeStates = 15;

}  // namespace

void TransmonCircuit::validate() const {
  if (!(critical_current_nA > 0.0))
    throw ValidationError("transmon critical current must be positive");
  if (!(total_capacitance_fF > 0.0))
    throw ValidationError("transmon capacitance must be positive");
}

double ej_from_critical_current(double critical_current_nA) {
  if (critical_current_nA < 0.0 || std::isnan(critical_current_nA))
    throw ValidationError(
        fmt::format("critical current must be >= 0, got {}", critical_current_nA));
  const double ic = critical_current_nA * 1e-9;
  return ic * units::kFluxQuantum / (2.0 * std::numbers::pi * units::kPlanck) * 1e-9;
}

double ec_from_capacitance(double capacitance_fF) {
  if (!(capacitance_fF > 0.0))
    throw ValidationError(
        fmt::format("capacitance must be > 0, got {}", capacitance_fF));
  const double c = capacitance_fF * 1e-15;
  return units::kElementaryCharge * units::kElementaryCharge /
         (2.0 * c * units::kPlanck) * 1e-9;
}

std::vector<double> charge_basis_levels(double ej_GHz, double ec_GHz,
                                        double offset_charge, int charge_cutoff,
                                        int n_levels) {
  const int dim = 2 * charge_cutoff + 1;
  if (dim < kMinChargeStates)
    throw ValidationError(fmt::format(
        "charge basis needs at least {} states, got {}", kMinChargeStates, dim));
  if (n_levels > dim) n_levels = dim;
  Eigen::VectorXd diag(dim);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(dim - 1, -0.5 * ej_GHz);
  for (int k = 0; k < dim; ++k) {
    const double n = static_cast<double>(k - charge_cutoff) - offset_charge;
    diag(k) = 4.0 * ec_GHz * n * n;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    // The implicit tridiagonal QR occasionally stalls on the near-degenerate
    // high-charge tail; the dense path reduces the same matrix robustly.
    Eigen::MatrixXd dense = diag.asDiagonal();
    dense.diagonal(1) = sub;
    dense.diagonal(-1) = sub;
    solver.compute(dense, Eigen::EigenvaluesOnly);
  }
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("charge-basis eigensolver failed");
  std::vector<double> levels(static_cast<std::size_t>(n_levels));
  for (int k = 0; k < n_levels; ++k) levels[k] = solver.eigenvalues()(k);
  return levels;
}

namespace {

struct LowLevels {
  double f01;
  double alpha;
};

LowLevels low_levels(double ej, double ec, double ng, int cutoff) {
  const auto e = charge_basis_levels(ej, ec, ng, cutoff, 3);
  const double f01 = e[1] - e[0];
  return {f01, (e[2] - e[1]) - f01};
}

}  // namespace

TransmonSpectrum diagonalize_energies(double ej_GHz, double ec_GHz,
                                      double offset_charge, int charge_cutoff,
                                      bool check_convergence) {
  if (!(ec_GHz > 0.0)) throw ValidationError("charging energy must be positive");
  if (!(ej_GHz >= 0.0)) throw ValidationError("Josephson energy must be >= 0");
  const LowLevels base = low_levels(ej_GHz, ec_GHz, offset_charge, charge_cutoff);
  if (check_convergence) {
    const LowLevels wider =
        low_levels(ej_GHz, ec_GHz, offset_charge, charge_cutoff + 5);
    if (std::abs(wider.f01 - base.f01) > kConvergenceTolerance_GHz ||
        std::abs(wider.alpha - base.alpha) > kConvergenceTolerance_GHz)
      throw ConvergenceError(fmt::format(
          "charge basis cutoff {} not converged (df01 = {:.3g} kHz)",
          charge_cutoff, std::abs(wider.f01 - base.f01) * 1e6));
  }
  TransmonSpectrum s;
  s.josephson_energy_GHz = ej_GHz;
  s.charging_energy_GHz = ec_GHz;
  s.ej_ec_ratio = ej_GHz / ec_GHz;
  s.f01_GHz = base.f01;
  s.anharmonicity_MHz = base.alpha * units::kGHzToMHz;
  s.charge_dispersion_kHz = charge_dispersion_kHz(ej_GHz, ec_GHz, charge_cutoff);
  return s;
}

TransmonSpectrum diagonalize_transmon(const TransmonCircuit& circuit,
                                      int charge_cutoff) {
  circuit.validate();
  return diagonalize_energies(ej_from_critical_current(circuit.critical_current_nA),
                              ec_from_capacitance(circuit.total_capacitance_fF),
                              circuit.gate_offset_charge, charge_cutoff);
}

double charge_dispersion_kHz(double ej_GHz, double ec_GHz, int charge_cutoff) {
  const double at_zero = low_levels(ej_GHz, ec_GHz, 0.0, charge_cutoff).f01;
  const double at_half = low_levels(ej_GHz, ec_GHz, 0.5, charge_cutoff).f01;
  return std::abs(at_half - at_zero) * 1e6;
}

double tphi_from_dispersion(double charge_dispersion_kHz) {
  if (!(charge_dispersion_kHz > 0.0))
    throw ValidationError("charge dispersion must be positive");
  return kChargeDephasingConstant_ms_kHz / charge_dispersion_kHz;
}

double asymptotic_f01(double ej_GHz, double ec_GHz) {
  return std::sqrt(8.0 * ej_GHz * ec_GHz) - ec_GHz;
}

}  // namespace qlattice::device
