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

#include "qlattice/device/coupling.hpp"

#include <cmath>
#include <fmt/format.h>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/units.hpp"

namespace qlattice::device {

double effective_exchange_J(double g1_MHz, double g2_MHz, double detuning1_MHz,
                            double detuning2_MHz) {
  if (detuning1_MHz == 0.0 || detuning2_MHz == 0.0)
    throw SingularityError("qubit resonant with bus; exchange is not dispersive");
  return g1_MHz * g2_MHz * (detuning1_MHz + detuning2_MHz) /
         (2.0 * detuning1_MHz * detuning2_MHz);
}

double bus_exchange_J(const BusCoupling& bus, double f1_GHz, double f2_GHz) {
  return effective_exchange_J(bus.g1_MHz, bus.g2_MHz,
                              (f1_GHz - bus.bus_frequency_GHz) * units::kGHzToMHz,
                              (f2_GHz - bus.bus_frequency_GHz) * units::kGHzToMHz);
}

std::string_view to_string(CrWindow w) {
  switch (w) {
    case CrWindow::kInWindow:
      return "in_window";
    case CrWindow::kControlBelowTarget:
      return "control_below_target";
    case CrWindow::kTargetBelowControlF12:
      return "target_below_control_f12";
  }
  return "unknown";
}

CrWindow cr_window_classify(double control_f01_GHz,
                            double control_anharmonicity_MHz,
                            double target_f01_GHz) {
  const double detuning_MHz = (control_f01_GHz - target_f01_GHz) * units::kGHzToMHz;
  if (detuning_MHz <= 0.0) return CrWindow::kControlBelowTarget;
  if (detuning_MHz >= std::abs(control_anharmonicity_MHz))
    return CrWindow::kTargetBelowControlF12;
  return CrWindow::kInWindow;
}

}  // namespace qlattice::device
