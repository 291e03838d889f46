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

#include "qlattice/calibration/ping_pong.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qlattice/common/errors.hpp"

namespace qlattice::calibration {

double weighted_residual(const PingPongTrain& train, double x, int n_max) {
  double r = 0.0;
  for (int n : train.repetitions) {
    if (n > n_max) break;
    r += train.sign(n) * (train.signal(x, n) - 0.5);
  }
  return r;
}

std::vector<double> deviation_trace(const PingPongTrain& train, double x) {
  std::vector<double> out;
  out.reserve(train.repetitions.size());
  for (int n : train.repetitions) out.push_back(std::abs(train.signal(x, n) - 0.5));
  return out;
}

bool nondecreasing(const std::vector<double>& trace, double slack) {
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i] + slack < trace[i - 1]) return false;
  return true;
}

RootSearch secant_root(const std::function<double(double)>& f, double x0, double x1,
                       double tolerance, double max_step, int max_evaluations) {
  RootSearch out;
  double f0 = f(x0);
  double f1 = f(x1);
  out.evaluations = 2;
  bool bracketed = false;
  double a = 0.0, fa = 0.0, b = 0.0, fb = 0.0;
  auto update_bracket = [&](double x, double fx) {
    if (!bracketed) {
      for (auto [y, fy] : {std::pair{x0, f0}, std::pair{x1, f1}}) {
        if (y == x || (fy > 0.0) == (fx > 0.0)) continue;
        a = std::min(x, y);
        b = std::max(x, y);
        fa = x < y ? fx : fy;
        fb = x < y ? fy : fx;
        bracketed = true;
        return;
      }
      return;
    }
    if (x <= a || x >= b) return;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  };
  update_bracket(x1, f1);
  while (out.evaluations < max_evaluations) {
    if (f1 == 0.0) {
      out = {x1, f1, out.evaluations, true};
      return out;
    }
    double x2;
    if (f1 != f0) {
      x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    } else {
      x2 = bracketed ? 0.5 * (a + b) : x1 + max_step;
    }
    if (bracketed) {
      if (!(x2 > a && x2 < b)) x2 = 0.5 * (a + b);
    } else if (std::abs(x2 - x1) > max_step) {
      x2 = x1 + std::copysign(max_step, x2 - x1);
    }
    const double f2 = f(x2);
    ++out.evaluations;
    const double step = std::abs(x2 - x1);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    update_bracket(x1, f1);
    if (step < tolerance || (bracketed && b - a < tolerance)) {
      out.value = x1;
      out.residual = f1;
      out.converged = true;
      return out;
    }
  }
  out.value = x1;
  out.residual = f1;
  out.converged = false;
  return out;
}

RampedSearch ramped_ping_pong(const PingPongTrain& train, double x0, double probe,
                              const std::vector<int>& n_caps, double tolerance,
                              double max_step, int max_evaluations) {
  if (n_caps.empty()) throw ValidationError("ping-pong ramp needs at least one cap");
  RampedSearch out;
  out.first_residual = std::abs(train.signal(x0, train.repetitions.back()) - 0.5);
  double x = x0;
  bool all_converged = true;
  for (std::size_t s = 0; s < n_caps.size(); ++s) {
    const int cap = n_caps[s];
    const bool last = s + 1 == n_caps.size();
    auto f = [&](double v) { return weighted_residual(train, v, cap); };
    // Intermediate stages only need to land inside the next stage's basin.
    const double tol = last ? tolerance : 10.0 * tolerance;
    const auto r = secant_root(f, x, x + probe, tol, max_step, max_evaluations);
    out.evaluations += r.evaluations;
    x = r.value;
    if (last) all_converged = r.converged;
    else all_converged = all_converged && r.converged;
  }
  out.value = x;
  out.final_deviation = std::abs(train.signal(x, train.repetitions.back()) - 0.5);
  out.converged = all_converged;
  return out;
}

double parabola_vertex(const std::vector<double>& x, const std::vector<double>& y,
                       double* curvature) {
  if (x.size() != y.size() || x.size() < 3)
    throw ValidationError("parabola fit needs at least three points");
  const int n = static_cast<int>(x.size());
  double center = 0.0;
  for (double v : x) center += v;
  center /= n;
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double u = x[i] - center;
    a(i, 0) = 1.0;
    a(i, 1) = u;
    a(i, 2) = u * u;
    b(i) = y[i];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  if (curvature) *curvature = c(2);
  if (c(2) == 0.0) throw ConvergenceError("parabola fit is degenerate (zero curvature)");
  return center - c(1) / (2.0 * c(2));
}

}  // namespace qlattice::calibration
