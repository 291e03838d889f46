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

#include "qlattice/calibration/single_qubit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <memory>
#include <numbers>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/gates.hpp"
#include "qlattice/dynamics/measurement.hpp"

namespace qlattice::calibration {

namespace {

using dynamics::Matrix;
using dynamics::Vector;
constexpr double kPi = std::numbers::pi;

// Stable tags for the RNG streams of each calibration stage.
enum StreamTag : std::uint64_t { kPi2 = 11, kPiTag = 12, kDrag = 13 };

bool is_half(SingleQubitGate g) {
  return g == SingleQubitGate::kX90 || g == SingleQubitGate::kXm90 ||
         g == SingleQubitGate::kY90 || g == SingleQubitGate::kYm90;
}

// The drive term rotates about the axis at azimuth -phase, so +y needs a
// phase of -pi/2.
double gate_phase(SingleQubitGate g) {
  switch (g) {
    case SingleQubitGate::kX90:
    case SingleQubitGate::kX180:
      return 0.0;
    case SingleQubitGate::kY90:
    case SingleQubitGate::kY180:
      return 3.0 * kPi / 2.0;
    case SingleQubitGate::kXm90:
    case SingleQubitGate::kXm180:
      return kPi;
    case SingleQubitGate::kYm90:
    case SingleQubitGate::kYm180:
      return kPi / 2.0;
  }
  return 0.0;
}

}  // namespace

double shot_noise_allowance(std::uint64_t shots) {
  return shots == 0 ? 0.0 : 3.0 * 0.5 / std::sqrt(static_cast<double>(shots));
}

std::string_view to_string(SingleQubitGate g) {
  switch (g) {
    case SingleQubitGate::kX90: return "X90";
    case SingleQubitGate::kXm90: return "X-90";
    case SingleQubitGate::kY90: return "Y90";
    case SingleQubitGate::kYm90: return "Y-90";
    case SingleQubitGate::kX180: return "X180";
    case SingleQubitGate::kXm180: return "X-180";
    case SingleQubitGate::kY180: return "Y180";
    case SingleQubitGate::kYm180: return "Y-180";
  }
  return "?";
}

SingleQubitGate single_qubit_gate_from_string(std::string_view label) {
  for (auto g : {SingleQubitGate::kX90, SingleQubitGate::kXm90, SingleQubitGate::kY90,
                 SingleQubitGate::kYm90, SingleQubitGate::kX180, SingleQubitGate::kXm180,
                 SingleQubitGate::kY180, SingleQubitGate::kYm180})
    if (to_string(g) == label) return g;
  throw ValidationError(fmt::format("unknown single-qubit gate '{}'", label));
}

dynamics::PulseEnvelope single_qubit_pulse(const SingleQubitParams& params, int channel,
                                           SingleQubitGate gate) {
  dynamics::PulseEnvelope p;
  p.shape = dynamics::PulseShape::kGaussian;
  p.duration_ns = params.duration_ns;
  p.amplitude_MHz = is_half(gate) ? params.amp_x90_MHz : params.amp_x180_MHz;
  p.drag_coefficient = params.drag;
  p.phase_rad = gate_phase(gate);
  p.channel = channel;
  return p;
}

QubitCalibrator::QubitCalibrator(const dynamics::PulseSimulator& sim, int transmon,
                                 std::string name, CalibrationOptions options)
    : sim_(sim), transmon_(transmon), name_(std::move(name)), options_(options) {
  if (transmon < 0 || transmon >= sim.model().n_transmons())
    throw ValidationError("calibrated transmon is not part of the model");
}

double QubitCalibrator::excited_probability(const SingleQubitParams& params,
                                            const std::vector<SingleQubitGate>& gates) const {
  const auto& model = sim_.model();
  Vector psi = Vector::Zero(model.dim());
  psi(0) = 1.0;
  double t = 0.0;
  for (auto g : gates) {
    const auto pulse = single_qubit_pulse(params, transmon_, g);
    psi = sim_.unitary(pulse, t) * psi;
    t += pulse.duration_ns;
  }
  const Vector dressed = model.dressed_basis().adjoint() * psi;
  double p1 = 0.0;
  for (int i = 0; i < model.dim(); ++i)
    if (model.level_of(i, transmon_) > 0) p1 += std::norm(dressed(i));
  return p1;
}

double QubitCalibrator::measured(double p1, std::uint64_t stream) const {
  CounterRng rng(stream);
  return dynamics::sampled_probability(p1, options_.shots, rng);
}

PingPongTrain QubitCalibrator::pi2_train(const SingleQubitParams& base) const {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  PingPongTrain t;
  t.repetitions = {0, 1, 2, 3, 4, 5, 6, 7};
  t.sign = [](int n) { return n % 2 == 0 ? 1 : -1; };
  t.signal = [this, base, counter](double amp, int n) {
    SingleQubitParams p = base;
    p.amp_x90_MHz = amp;
    std::vector<SingleQubitGate> gates(2 * n + 1, SingleQubitGate::kX90);
    return measured(excited_probability(p, gates),
                    derive_stream(options_.seed, kPi2, (*counter)++, n));
  };
  return t;
}

PingPongTrain QubitCalibrator::pi_train(const SingleQubitParams& base) const {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  PingPongTrain t;
  t.repetitions = {1, 2, 3, 4, 5, 6, 7};
  t.sign = [](int n) { return n % 2 == 0 ? 1 : -1; };
  t.signal = [this, base, counter](double amp, int n) {
    SingleQubitParams p = base;
    p.amp_x180_MHz = amp;
    std::vector<SingleQubitGate> gates{SingleQubitGate::kX90};
    gates.insert(gates.end(), n, SingleQubitGate::kX180);
    return measured(excited_probability(p, gates),
                    derive_stream(options_.seed, kPiTag, (*counter)++, n));
  };
  return t;
}

PingPongTrain QubitCalibrator::drag_train(const SingleQubitParams& base) const {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  PingPongTrain t;
  t.repetitions = {1, 2, 3, 4, 5, 6, 7};
  // The deviation is even in the coefficient error, so the sign only
  // selects the branch used for the N-weighted sum.
  t.sign = [](int) { return 1; };
  t.signal = [this, base, counter](double drag, int n) {
    SingleQubitParams p = base;
    p.drag = drag;
    std::vector<SingleQubitGate> gates{SingleQubitGate::kX90};
    for (int k = 0; k < n; ++k) {
      gates.push_back(SingleQubitGate::kX90);
      gates.push_back(SingleQubitGate::kXm90);
    }
    return measured(excited_probability(p, gates),
                    derive_stream(options_.seed, kDrag, (*counter)++, n));
  };
  return t;
}

CalibrationResult QubitCalibrator::calibrate_pi2(CalibrationStore& store) const {
  store.require_ready_for(name_, "pi2_amplitude");
  const SingleQubitParams base = store.qubit(name_);
  if (!(base.amp_x90_MHz > 0.0))
    throw ValidationError(fmt::format("{}: pi/2 calibration needs a rough amplitude", name_));
  const auto train = pi2_train(base);
  const double x0 = base.amp_x90_MHz;
  const auto r = ramped_ping_pong(train, x0, 0.01 * x0, {1, 3, 7},
                                  options_.amplitude_tolerance * x0 * 0.1, 0.25 * x0,
                                  options_.max_evaluations);
  CalibrationResult out{name_, "pi2_amplitude", x0, r.value, r.final_deviation,
                        r.first_residual, r.evaluations, false, false, ""};
  out.converged = r.converged && r.final_deviation <= options_.residual_tolerance +
                                                         shot_noise_allowance(options_.shots);
  out.alias_warning = r.first_residual > options_.alias_threshold;
  if (!out.converged) throw ConvergenceError(fmt::format("{}: pi/2 amplitude did not converge", name_));
  store.commit_pi2(name_, r.value, out);
  return out;
}

CalibrationResult QubitCalibrator::calibrate_pi(CalibrationStore& store) const {
  store.require_ready_for(name_, "pi_amplitude");
  SingleQubitParams base = store.qubit(name_);
  // Bootstrapped from the tuned pi/2 pulse when no rough value is given.
  const double x0 = base.amp_x180_MHz > 0.0 ? base.amp_x180_MHz : 2.0 * base.amp_x90_MHz;
  const auto train = pi_train(base);
  const auto r = ramped_ping_pong(train, x0, 0.01 * x0, {1, 3, 7},
                                  options_.amplitude_tolerance * x0 * 0.1, 0.25 * x0,
                                  options_.max_evaluations);
  CalibrationResult out{name_, "pi_amplitude", x0, r.value, r.final_deviation,
                        r.first_residual, r.evaluations, false, false, ""};
  out.converged = r.converged && r.final_deviation <= options_.residual_tolerance +
                                                         shot_noise_allowance(options_.shots);
  out.alias_warning = r.first_residual > options_.alias_threshold;
  if (!out.converged) throw ConvergenceError(fmt::format("{}: pi amplitude did not converge", name_));
  store.commit_pi(name_, r.value, out);
  return out;
}

CalibrationResult QubitCalibrator::calibrate_drag(CalibrationStore& store,
                                                  double sweep_span) const {
  store.require_ready_for(name_, "drag");
  const SingleQubitParams base = store.qubit(name_);
  const auto train = drag_train(base);
  auto deviation = [&](double drag) {
    double d = 0.0;
    for (int n : train.repetitions) d += train.signal(drag, n) - 0.5;
    return d;
  };
  // Parabola-vertex iteration on the even deviation signal, narrowing the
  // sweep around each new estimate.
  double center = base.drag;
  double span = sweep_span;
  int evaluations = 0;
  bool fit_ok = false;
  const int half_points = options_.shots == 0 ? 3 : 10;
  const double first = std::abs(train.signal(center, train.repetitions.back()) - 0.5);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<double> xs, ys;
    for (int k = -half_points; k <= half_points; ++k) {
      const double x = center + span * k / half_points;
      xs.push_back(x);
      ys.push_back(deviation(x));
      evaluations += static_cast<int>(train.repetitions.size());
    }
    double curvature = 0.0;
    const double vertex = parabola_vertex(xs, ys, &curvature);
    if (!(curvature > 0.0) || std::abs(vertex - center) > span) {
      // No minimum inside the sweep: widen and move to the best sample.
      center = xs[std::min_element(ys.begin(), ys.end()) - ys.begin()];
      span *= 2.0;
      fit_ok = false;
      continue;
    }
    fit_ok = true;
    const double change = std::abs(vertex - center);
    center = vertex;
    const double scale = std::max(std::abs(center), 1e-3);
    if (change < options_.drag_tolerance * scale * 0.25) break;
    // Shot noise limits how far the sweep can usefully narrow.
    const double floor = options_.shots == 0 ? 4.0 * options_.drag_tolerance * scale
                                             : sweep_span;
    span = std::max(span * 0.35, floor);
  }
  const bool converged = fit_ok;
  const double residual = std::abs(train.signal(center, train.repetitions.back()) - 0.5);
  CalibrationResult out{name_, "drag", base.drag, center, residual, first, evaluations,
                        false, false, ""};
  out.converged = converged && residual <= options_.residual_tolerance +
                                               shot_noise_allowance(options_.shots);
  if (!out.converged) throw ConvergenceError(fmt::format("{}: DRAG did not converge", name_));
  store.commit_drag(name_, center, out);
  return out;
}

double QubitCalibrator::rotation_angle(const SingleQubitParams& params,
                                       SingleQubitGate gate) const {
  const auto& model = sim_.model();
  const Matrix u = sim_.unitary(single_qubit_pulse(params, transmon_, gate));
  // Block spanned by levels 0 and 1 of this transmon, others in the ground.
  int stride = 1;
  for (int j = model.n_transmons() - 1; j > transmon_; --j) stride *= model.levels();
  Matrix block(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) block(r, c) = u(r * stride, c * stride);
  return dynamics::unwrapped_rotation_angle(block);
}

double QubitCalibrator::oracle_amplitude(const SingleQubitParams& base,
                                         SingleQubitGate gate) const {
  const double target = is_half(gate) ? kPi / 2.0 : kPi;
  SingleQubitParams p = base;
  auto angle_at = [&](double amp) {
    (is_half(gate) ? p.amp_x90_MHz : p.amp_x180_MHz) = amp;
    return rotation_angle(p, gate) - target;
  };
  dynamics::PulseEnvelope unit = single_qubit_pulse(base, transmon_, gate);
  unit.amplitude_MHz = 1.0;
  const double estimate = target / (2.0 * kPi * unit.area_MHz_ns() * 1e-3);
  // Dense sweep over +/-10 % of the area estimate, then bisection.
  double lo = 0.0, hi = 0.0;
  double prev_x = 0.0, prev_f = 0.0;
  bool found = false;
  for (int k = 0; k <= 40 && !found; ++k) {
    const double x = estimate * (0.9 + 0.2 * k / 40.0);
    const double f = angle_at(x);
    if (k > 0 && (f > 0.0) != (prev_f > 0.0)) {
      lo = prev_x;
      hi = x;
      found = true;
    }
    prev_x = x;
    prev_f = f;
  }
  if (!found) throw ConvergenceError("amplitude oracle found no crossing in its sweep");
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (angle_at(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double QubitCalibrator::leakage_after_pi(const SingleQubitParams& params) const {
  const auto& model = sim_.model();
  const Matrix u = sim_.unitary(single_qubit_pulse(params, transmon_, SingleQubitGate::kX180));
  double leak = 0.0;
  for (int i = 0; i < model.dim(); ++i)
    if (model.level_of(i, transmon_) >= 2) leak += std::norm(u(i, 0));
  return leak;
}

double QubitCalibrator::oracle_drag(const SingleQubitParams& base, double lo,
                                    double hi) const {
  SingleQubitParams p = base;
  auto leak = [&](double d) {
    p.drag = d;
    return leakage_after_pi(p);
  };
  const int n = 40;
  int best = 0;
  double best_val = 1e300;
  for (int k = 0; k <= n; ++k) {
    const double v = leak(lo + (hi - lo) * k / n);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / n;
  double b = lo + (hi - lo) * std::min(n, best + 1) / n;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = leak(c), fd = leak(d);
  for (int i = 0; i < 80; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = leak(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = leak(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qlattice::calibration
