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

#include "qlattice/device/readout.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/units.hpp"

namespace qlattice::device {

void ReadoutResonator::validate() const {
  if (!(frequency_GHz > 0.0))
    throw ValidationError("readout resonator frequency must be positive");
  if (!(quality_factor > 0.0))
    throw ValidationError("readout resonator Q must be positive");
}

double dispersive_shift(double coupling_MHz, double detuning_MHz,
                        double anharmonicity_MHz) {
  const double shifted = detuning_MHz + anharmonicity_MHz;
  if (detuning_MHz == 0.0 || shifted == 0.0)
    throw SingularityError(fmt::format(
        "dispersive shift is singular at Delta = {} MHz, Delta + alpha = {} MHz",
        detuning_MHz, shifted));
  if ((detuning_MHz > 0.0) != (shifted > 0.0))
    throw SingularityError(fmt::format(
        "straddling regime (Delta = {} MHz, Delta + alpha = {} MHz) is not "
        "covered by the dispersive formula",
        detuning_MHz, shifted));
  return coupling_MHz * coupling_MHz * anharmonicity_MHz /
         (detuning_MHz * shifted);
}

double purcell_t1(double coupling_MHz, double detuning_MHz,
                  double resonator_GHz, double quality_factor) {
  if (detuning_MHz == 0.0)
    throw SingularityError("Purcell rate is singular at zero detuning");
  if (!(quality_factor > 0.0))
    throw ValidationError("resonator Q must be positive");
  if (!(resonator_GHz > 0.0))
    throw ValidationError("resonator frequency must be positive");
  if (std::isinf(quality_factor) || coupling_MHz == 0.0)
    return std::numeric_limits<double>::infinity();
  const double kappa_per_us =
      2.0 * std::numbers::pi * resonator_GHz * 1e3 / quality_factor;
  const double ratio = coupling_MHz / detuning_MHz;
  return 1.0 / (kappa_per_us * ratio * ratio);
}

double g_from_coupling_capacitance(double coupling_capacitance_fF,
                                   double total_capacitance_fF,
                                   double resonator_GHz, double ej_ec_ratio) {
  if (coupling_capacitance_fF < 0.0 || !(total_capacitance_fF > 0.0) ||
      !(resonator_GHz > 0.0) || !(ej_ec_ratio > 0.0))
    throw ValidationError("coupling estimate needs positive inputs");
  const double omega_r = 2.0 * std::numbers::pi * resonator_GHz * 1e9;
  const double c_res = std::numbers::pi / (2.0 * omega_r * kResonatorImpedance_Ohm);
  const double v_rms = std::sqrt(units::kReducedPlanck * omega_r / (2.0 * c_res));
  const double beta = coupling_capacitance_fF / total_capacitance_fF;
  const double n01 = std::pow(ej_ec_ratio / 8.0, 0.25) / std::numbers::sqrt2;
  const double g_hz =
      2.0 * units::kElementaryCharge * beta * v_rms * n01 / units::kPlanck;
  return g_hz * 1e-6;
}

}  // namespace qlattice::device
