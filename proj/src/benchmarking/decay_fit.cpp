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

#include "qlattice/benchmarking/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qlattice/common/curve_fit.hpp"
#include "qlattice/common/errors.hpp"

namespace qlattice::benchmarking {

double fidelity_from_p(double p, int d) {
  if (d < 2) throw ValidationError("RB dimension must be >= 2");
  return 1.0 - (d - 1.0) * (1.0 - p) / d;
}

double p_from_fidelity(double f, int d) {
  if (d < 2) throw ValidationError("RB dimension must be >= 2");
  return 1.0 - (1.0 - f) * d / (d - 1.0);
}

double per_primitive_fidelity(double clifford_fidelity, double primitives) {
  if (!(primitives > 0.0)) throw ValidationError("primitive count must be positive");
  return 1.0 - (1.0 - clifford_fidelity) / primitives;
}

DecayFit fit_rb_decay(const std::vector<int>& lengths, const std::vector<double>& y,
                      int d, const std::vector<double>& stderrs) {
  if (lengths.size() != y.size()) throw ValidationError("lengths and survivals differ in size");
  if (std::set<int>(lengths.begin(), lengths.end()).size() < 4)
    throw ValidationError("RB decay fit needs at least 4 distinct lengths");
  DecayFit out;
  out.dimension = d;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  if (*hi - *lo < 1e-12) {
    out.A = 0.0;
    out.B = *hi;
    out.p = 1.0;
    out.fidelity = 1.0;
    return out;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  Eigen::VectorXd m(n), v(n), w = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i) = lengths[i];
    v(i) = y[i];
  }
  if (static_cast<Eigen::Index>(stderrs.size()) == n) {
    // Weights 1/sigma, floored so exact (zero-variance) points stay finite.
    const double floor = 1e-4;
    for (Eigen::Index i = 0; i < n; ++i) w(i) = 1.0 / std::max(stderrs[i], floor);
  }
  const double b0 = 1.0 / d;
  const Eigen::Index first = std::min_element(m.data(), m.data() + n) - m.data();
  const double a0 = std::max(v(first) - b0, 1e-3);
  // log(y - B0) = log A + m log p over points above B0.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = v(i) - b0;
    if (r <= 1e-9) continue;
    sx += m(i);
    sy += std::log(r);
    sxx += m(i) * m(i);
    sxy += m(i) * std::log(r);
    ++k;
  }
  double p0 = 0.99;
  if (k >= 2 && k * sxx - sx * sx > 0.0)
    p0 = std::clamp(std::exp((k * sxy - sx * sy) / (k * sxx - sx * sx)), 0.05, 0.999999);
  const CurveModel model = [](const Eigen::VectorXd& q, double mm) {
    return q(0) * std::pow(q(2), mm) + q(1);
  };
  Eigen::VectorXd init(3);
  init << a0, b0, p0;
  try {
    const auto fit = fit_curve(model, m, v, init, w);
    out.A = fit.params(0);
    out.B = fit.params(1);
    out.p = fit.params(2);
    out.A_stderr = fit.stderr_(0);
    out.B_stderr = fit.stderr_(1);
    out.p_stderr = fit.stderr_(2);
  } catch (const ConvergenceError& e) {
    out.converged = false;
    out.diagnostic = e.what();
    out.p = p0;
  }
  if (out.p > 1.0 || out.p < 0.0) {
    out.diagnostic = "fitted p outside [0, 1]; clamped";
    out.p = std::clamp(out.p, 0.0, 1.0);
  }
  out.fidelity = fidelity_from_p(out.p, d);
  out.fidelity_stderr = (d - 1.0) / d * out.p_stderr;
  return out;
}

}  // namespace qlattice::benchmarking
