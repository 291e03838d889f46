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

#include "qlattice/device/inverse_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fmt/format.h>

#include "qlattice/common/errors.hpp"

namespace qlattice::device {

namespace {

Eigen::Vector2d residual(const Eigen::Vector2d& log_params, double f01,
                         double alpha_MHz) {
  const double ic = std::exp(log_params(0));
  const double c = std::exp(log_params(1));
  const auto s = diagonalize_energies(ej_from_critical_current(ic),
                                      ec_from_capacitance(c), 0.0,
                                      kDefaultChargeCutoff, false);
  return {s.f01_GHz / f01 - 1.0, s.anharmonicity_MHz / alpha_MHz - 1.0};
}

}  // namespace

InverseFitResult fit_circuit_to_spectrum(double f01_GHz, double anharmonicity_MHz,
                                         const TransmonCircuit& guess,
                                         double relative_tolerance,
                                         int max_iterations) {
  guess.validate();
  if (!(f01_GHz > 0.0) || !(anharmonicity_MHz < 0.0))
    throw ValidationError("inverse fit needs f01 > 0 and a negative anharmonicity");
  Eigen::Vector2d x(std::log(guess.critical_current_nA),
                    std::log(guess.total_capacitance_fF));
  Eigen::Vector2d r = residual(x, f01_GHz, anharmonicity_MHz);
  constexpr double kStep = 1e-6;
  constexpr double kMaxLogStep = 1.0;
  int it = 0;
  for (; it < max_iterations && r.norm() > relative_tolerance; ++it) {
    Eigen::Matrix2d jac;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d xp = x;
      xp(k) += kStep;
      jac.col(k) = (residual(xp, f01_GHz, anharmonicity_MHz) - r) / kStep;
    }
    Eigen::Vector2d step = jac.fullPivLu().solve(-r);
    // Keep each log-space step within a factor of e so trial circuits stay
    // physical; Newton steps near the transmon crossover can overshoot.
    if (!step.allFinite()) break;
    if (step.cwiseAbs().maxCoeff() > kMaxLogStep)
      step *= kMaxLogStep / step.cwiseAbs().maxCoeff();
    double scale = 1.0;
    for (int halvings = 0; halvings < 30; ++halvings, scale *= 0.5) {
      const Eigen::Vector2d trial = x + scale * step;
      Eigen::Vector2d rt;
      try {
        rt = residual(trial, f01_GHz, anharmonicity_MHz);
      } catch (const ConvergenceError&) {
        continue;
      }
      if (rt.allFinite() && rt.norm() < r.norm()) {
        x = trial;
        r = rt;
        break;
      }
    }
  }
  if (r.norm() > relative_tolerance)
    throw ConvergenceError(fmt::format(
        "inverse transmon fit did not converge (residual {:.3g})", r.norm()));
  InverseFitResult out;
  out.circuit.critical_current_nA = std::exp(x(0));
  out.circuit.total_capacitance_fF = std::exp(x(1));
  out.spectrum = diagonalize_transmon(out.circuit);
  out.iterations = it;
  return out;
}

}  // namespace qlattice::device
