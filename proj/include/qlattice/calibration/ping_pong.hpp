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

#include <functional>
#include <vector>

namespace qlattice::calibration {

/// Error-amplifying train: the measured excited-state probability after the
/// sequence with N repetitions, as a function of the tuned parameter x.
using TrainSignal = std::function<double(double x, int n)>;

/// A train plus the sign with which an increase of x moves P_N - 1/2.
struct PingPongTrain {
  TrainSignal signal;
  std::function<int(int n)> sign;
  std::vector<int> repetitions;  ///< N values, ascending
};

/// N-weighted signed residual sum_{N <= n_max} sign(N) (P_N(x) - 1/2); it is
/// increasing in x near the calibrated point and vanishes there.
double weighted_residual(const PingPongTrain& train, double x, int n_max);

/// |P_N - 1/2| for every N of the train at x.
std::vector<double> deviation_trace(const PingPongTrain& train, double x);

/// True when the trace is nondecreasing in N up to `slack`.
bool nondecreasing(const std::vector<double>& trace, double slack = 0.0);

struct RootSearch {
  double value = 0.0;
  double residual = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// One-dimensional secant iteration with a bisection fallback once a sign
/// change has been bracketed.  Steps are clipped to `max_step` before a
/// bracket exists.  Converged when the update falls below `tolerance`.
RootSearch secant_root(const std::function<double(double)>& f, double x0, double x1,
                       double tolerance, double max_step, int max_evaluations);

struct RampedSearch {
  double value = 0.0;
  double first_residual = 0.0;
  double final_deviation = 0.0;  ///< |P_{N max} - 1/2| at the result
  int evaluations = 0;
  bool converged = false;
};

/// Runs secant_root on the weighted residual for each cap in `n_caps`
/// (ascending), seeding each stage with the previous result.  Small caps
/// first keep large initial errors from aliasing at high N.
RampedSearch ramped_ping_pong(const PingPongTrain& train, double x0, double probe,
                              const std::vector<int>& n_caps, double tolerance,
                              double max_step, int max_evaluations);

/// Vertex of the least-squares parabola through (x_i, y_i).
double parabola_vertex(const std::vector<double>& x, const std::vector<double>& y,
                       double* curvature = nullptr);

}  // namespace qlattice::calibration
