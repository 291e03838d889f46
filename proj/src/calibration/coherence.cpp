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

#include "qlattice/calibration/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlattice/calibration/single_qubit.hpp"
#include "qlattice/common/curve_fit.hpp"
#include "qlattice/common/errors.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/evolve.hpp"
#include "qlattice/dynamics/measurement.hpp"

namespace qlattice::calibration {

namespace {

using dynamics::Matrix;
using dynamics::Vector;

enum StreamTag : std::uint64_t { kT1 = 31, kT2 = 32 };

Matrix unvec(const Vector& v, int d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

void require_pi(const SingleQubitParams& params) {
  if (!(params.amp_x180_MHz > 0.0) || !(params.amp_x90_MHz > 0.0))
    throw OrderingError("coherence measurements need calibrated pi/2 and pi pulses");
}

// Applies a pulse sequence, then reads the dressed population of `transmon`.
class Runner {
 public:
  Runner(const dynamics::PulseSimulator& sim, int transmon, const SingleQubitParams& params)
      : sim_(sim), transmon_(transmon), params_(params) {
    const int d = sim.model().dim();
    rho_ = Vector::Zero(d * d);
    rho_(0) = 1.0;
  }
  void pulse(SingleQubitGate g) {
    const auto p = single_qubit_pulse(params_, transmon_, g);
    rho_ = sim_.superoperator(p, t_) * rho_;
    t_ += p.duration_ns;
  }
  void idle(double ns) {
    if (ns <= 0.0) return;
    rho_ = sim_.idle_superoperator(ns, t_) * rho_;
    t_ += ns;
  }
  double excited() const {
    const auto& m = sim_.model();
    const Matrix s = m.dressed_basis();
    const Matrix rho = unvec(rho_, m.dim());
    const Matrix dressed = s.adjoint() * rho * s;
    return std::clamp(dynamics::excited_probability(dressed, m.levels(), m.n_transmons(),
                                                    transmon_),
                      0.0, 1.0);
  }

 private:
  const dynamics::PulseSimulator& sim_;
  int transmon_;
  SingleQubitParams params_;
  Vector rho_;
  double t_ = 0.0;
};

}  // namespace

std::vector<double> linear_delays_us(double span_us, int count) {
  if (!(span_us > 0.0) || count < 4) throw ValidationError("delay sweep needs span > 0 and >= 4 points");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = span_us * i / (count - 1);
  return out;
}

DecayTime fit_decay(const std::vector<double>& t, const std::vector<double>& y,
                    double flat_threshold) {
  if (t.size() != y.size() || t.size() < 4)
    throw ValidationError("decay fit needs >= 4 matching points");
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  DecayTime out;
  if (*hi - *lo < flat_threshold) {
    out.value_us = std::numeric_limits<double>::infinity();
    out.stderr_us = std::numeric_limits<double>::infinity();
    out.offset = y.front();
    out.finite = false;
    return out;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::VectorXd x(n), v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = t[i];
    v(i) = y[i];
  }
  // Initial guess: B from the tail, A from the head, T from the 1/e crossing.
  const double b0 = v.tail(std::max<Eigen::Index>(1, n / 8)).mean();
  const double a0 = v(0) - b0;
  double t0 = x(n - 1) / 3.0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(v(i) - b0) < std::abs(a0) / std::exp(1.0)) {
      t0 = std::max(x(i), 1e-6);
      break;
    }
  const CurveModel model = [](const Eigen::VectorXd& p, double s) {
    return p(0) * std::exp(-s / p(2)) + p(1);
  };
  Eigen::VectorXd init(3);
  init << a0, b0, t0;
  const auto fit = fit_curve(model, x, v, init);
  if (!(fit.params(2) > 0.0)) throw ConvergenceError("decay fit produced a non-positive time");
  out.amplitude = fit.params(0);
  out.offset = fit.params(1);
  out.value_us = fit.params(2);
  out.stderr_us = fit.stderr_(2);
  return out;
}

CoherenceTrace t1_trace(const dynamics::PulseSimulator& sim, int transmon,
                        const SingleQubitParams& params, const std::vector<double>& delays_us,
                        std::uint64_t shots, std::uint64_t seed) {
  require_pi(params);
  CoherenceTrace out{delays_us, {}};
  for (std::size_t i = 0; i < delays_us.size(); ++i) {
    Runner r(sim, transmon, params);
    r.pulse(SingleQubitGate::kX180);
    r.idle(delays_us[i] * 1e3);
    CounterRng rng(derive_stream(seed, kT1, i));
    out.excited.push_back(dynamics::sampled_probability(r.excited(), shots, rng));
  }
  return out;
}

CoherenceTrace t2echo_trace(const dynamics::PulseSimulator& sim, int transmon,
                            const SingleQubitParams& params,
                            const std::vector<double>& delays_us, std::uint64_t shots,
                            std::uint64_t seed) {
  require_pi(params);
  CoherenceTrace out{delays_us, {}};
  for (std::size_t i = 0; i < delays_us.size(); ++i) {
    Runner r(sim, transmon, params);
    r.pulse(SingleQubitGate::kX90);
    r.idle(delays_us[i] * 0.5e3);
    r.pulse(SingleQubitGate::kX180);
    r.idle(delays_us[i] * 0.5e3);
    r.pulse(SingleQubitGate::kX90);
    CounterRng rng(derive_stream(seed, kT2, i));
    out.excited.push_back(dynamics::sampled_probability(r.excited(), shots, rng));
  }
  return out;
}

DecayTime measure_t1(const dynamics::PulseSimulator& sim, int transmon,
                     const SingleQubitParams& params, const std::vector<double>& delays_us,
                     std::uint64_t shots, std::uint64_t seed) {
  const auto trace = t1_trace(sim, transmon, params, delays_us, shots, seed);
  return fit_decay(trace.delays_us, trace.excited);
}

DecayTime measure_t2echo(const dynamics::PulseSimulator& sim, int transmon,
                         const SingleQubitParams& params,
                         const std::vector<double>& delays_us, std::uint64_t shots,
                         std::uint64_t seed) {
  const auto trace = t2echo_trace(sim, transmon, params, delays_us, shots, seed);
  return fit_decay(trace.delays_us, trace.excited);
}

}  // namespace qlattice::calibration
