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

namespace qlattice::device {

struct ReadoutResonator {
  double frequency_GHz = 0.0;
  double quality_factor = 0.0;
  double coupling_MHz = 0.0;
  double coupling_capacitance_fF = 0.0;

  void validate() const;
};

/// Qubit-state dependent pull of a dispersively coupled resonator,
/// chi = g^2 alpha / (Delta (Delta + alpha)), all in MHz with
/// Delta = f_q - f_r.  Resonant and straddling inputs throw SingularityError.
double dispersive_shift(double coupling_MHz, double detuning_MHz,
                        double anharmonicity_MHz);

/// Single-mode Purcell limit T1 = 1 / (kappa (g/Delta)^2) in us, with
/// kappa = 2 pi f_r / Q.  An infinite Q gives an infinite T1.
double purcell_t1(double coupling_MHz, double detuning_MHz,
                  double resonator_GHz, double quality_factor);

/// Characteristic impedance assumed for the half-wave readout line.
inline constexpr double kResonatorImpedance_Ohm = 50.0;

/// Design-level coupling estimate in MHz from the coupling capacitance:
/// hbar g = 2 e (C_R / C_sigma) V_rms <1|n|0>, with V_rms the zero-point
/// voltage of a half-wave resonator at 50 Ohm and
/// <1|n|0> = (E_J / 8 E_C)^(1/4) / sqrt(2).
double g_from_coupling_capacitance(double coupling_capacitance_fF,
                                   double total_capacitance_fF,
                                   double resonator_GHz, double ej_ec_ratio);

}  // namespace qlattice::device
