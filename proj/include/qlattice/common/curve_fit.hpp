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

#include <Eigen/Dense>
#include <functional>

namespace qlattice {

/// y = model(params, x) for one abscissa.
using CurveModel = std::function<double(const Eigen::VectorXd& params, double x)>;

struct CurveFitResult {
  Eigen::VectorXd params;
  Eigen::VectorXd stderr_;  ///< sqrt(diag(s^2 (J^T J)^-1)), s^2 = SSR / (n - p)
  double ssr = 0.0;
  int iterations = 0;
};

/// Levenberg-Marquardt least squares with a central-difference Jacobian.
/// Optional weights multiply the residuals.  Throws ConvergenceError when
/// the solver fails or the normal matrix is singular at the optimum.
CurveFitResult fit_curve(const CurveModel& model, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y, const Eigen::VectorXd& initial,
                         const Eigen::VectorXd& weights = Eigen::VectorXd());

}  // namespace qlattice
