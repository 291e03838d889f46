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

#include <string_view>

namespace qlattice::device {

/// Bus resonator shared by two transmons.
struct BusCoupling {
  double bus_frequency_GHz = 0.0;
  double g1_MHz = 0.0;
  double g2_MHz = 0.0;
};

/// Bus-mediated exchange J = g1 g2 (D1 + D2) / (2 D1 D2) in MHz, with Dk the
/// qubit-minus-bus detuning of transmon k.
double effective_exchange_J(double g1_MHz, double g2_MHz, double detuning1_MHz,
                            double detuning2_MHz);

/// J for a concrete bus given both qubit frequencies.
double bus_exchange_J(const BusCoupling& bus, double f1_GHz, double f2_GHz);

/// Where the target transition sits relative to the control's f01 and f12.
enum class CrWindow {
  kInWindow,             ///< f12(control) < f_target < f01(control)
  kControlBelowTarget,   ///< f_target >= f01(control)
  kTargetBelowControlF12 ///< f_target <= f12(control)
};

std::string_view to_string(CrWindow w);

CrWindow cr_window_classify(double control_f01_GHz,
                            double control_anharmonicity_MHz,
                            double target_f01_GHz);

}  // namespace qlattice::device
