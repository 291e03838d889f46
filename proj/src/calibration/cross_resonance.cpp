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

#include "qlattice/calibration/cross_resonance.hpp"

#include <array>
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
constexpr int kControl = 0;
constexpr int kTarget = 1;

enum StreamTag : std::uint64_t { kCrAmplitude = 21, kCrPhase = 22 };

double wrap(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

dynamics::PulseEnvelope cr_pulse(const CrossResonanceParams& cr, int control, int target,
                                 double phase) {
  dynamics::PulseEnvelope p;
  p.shape = dynamics::PulseShape::kGaussianSquare;
  p.duration_ns = cr.half_duration_ns;
  p.rise_ns = cr.rise_ns;
  p.amplitude_MHz = cr.amplitude_MHz;
  p.phase_rad = phase;
  p.channel = control;
  p.frame_transmon = target;
  return p;
}

Matrix corrections_applied(const Matrix& block4, double cz, double tz) {
  const Matrix post = dynamics::qubit_z_rotation(2, kControl, cz) *
                      dynamics::qubit_z_rotation(2, kTarget, tz / 2.0);
  const Matrix pre = dynamics::qubit_z_rotation(2, kTarget, tz / 2.0);
  return post * block4 * pre;
}

}  // namespace

Matrix zx90_about(double axis) {
  const dynamics::Complex i(0.0, 1.0);
  Matrix n(2, 2);
  n << 0.0, std::polar(1.0, -axis), std::polar(1.0, axis), 0.0;
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  Matrix zn(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) zn.block(2 * r, 2 * c, 2, 2) = z(r, c) * n;
  return std::cos(kPi / 4) * Matrix::Identity(4, 4) - i * std::sin(kPi / 4) * zn;
}

double echoed_cr_duration(const CrossResonanceParams& cr, const SingleQubitParams& control) {
  return 2.0 * cr.half_duration_ns + 2.0 * control.duration_ns;
}

dynamics::ControlSequence build_echoed_cr(const CrossResonanceParams& cr,
                                          const SingleQubitParams& control_params,
                                          int control, int target, double t0) {
  if (!(cr.amplitude_MHz > 0.0))
    throw ValidationError(fmt::format("{}-{}: CR amplitude is not calibrated", cr.control,
                                      cr.target));
  dynamics::ControlSequence seq;
  const auto x180 = single_qubit_pulse(control_params, control, SingleQubitGate::kX180);
  double t = t0;
  seq.virtual_z.push_back({t, target, cr.target_z_rad / 2.0});
  seq.add(t, cr_pulse(cr, control, target, cr.phase_rad));
  t += cr.half_duration_ns;
  seq.add(t, x180);
  t += x180.duration_ns;
  seq.add(t, cr_pulse(cr, control, target, cr.phase_rad + kPi));
  t += cr.half_duration_ns;
  seq.add(t, x180);
  t += x180.duration_ns;
  seq.virtual_z.push_back({t, control, cr.control_z_rad});
  seq.virtual_z.push_back({t, target, cr.target_z_rad / 2.0});
  return seq;
}

CrossResonanceCalibrator::CrossResonanceCalibrator(const dynamics::PulseSimulator& sim,
                                                   std::string edge, std::string control_name,
                                                   std::string target_name,
                                                   CalibrationOptions options)
    : sim_(sim),
      edge_(std::move(edge)),
      control_name_(std::move(control_name)),
      target_name_(std::move(target_name)),
      options_(options) {
  if (sim.model().n_transmons() != 2)
    throw ValidationError("CR calibration runs on a two-transmon control/target model");
}

device::CrWindow CrossResonanceCalibrator::window() const {
  const auto& m = sim_.model();
  return device::cr_window_classify(m.dressed_f01(kControl),
                                    m.modes()[kControl].anharmonicity_MHz,
                                    m.dressed_f01(kTarget));
}

Matrix CrossResonanceCalibrator::raw_gate(const CrossResonanceParams& cr,
                                          const SingleQubitParams& control, double t0) const {
  const auto x180 = single_qubit_pulse(control, kControl, SingleQubitGate::kX180);
  const auto plus = cr_pulse(cr, kControl, kTarget, cr.phase_rad);
  const auto minus = cr_pulse(cr, kControl, kTarget, cr.phase_rad + kPi);
  double t = t0;
  Matrix u = sim_.unitary(plus, t);
  t += plus.duration_ns;
  u = sim_.unitary(x180, t) * u;
  t += x180.duration_ns;
  u = sim_.unitary(minus, t) * u;
  t += minus.duration_ns;
  u = sim_.unitary(x180, t) * u;
  t += x180.duration_ns;
  return dynamics::to_dressed_frame(sim_.model(), u, t0, t);
}

FrameFit CrossResonanceCalibrator::fit_frame(const Matrix& block4) const {
  auto fidelity = [&](const std::array<double, 3>& c) {
    return dynamics::average_gate_fidelity(corrections_applied(block4, c[0], c[1]),
                                           zx90_about(c[2]));
  };
  // Grid start, then coordinate descent with step halving.
  std::array<double, 3> best{0.0, 0.0, 0.0};
  double best_f = -1.0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        const std::array<double, 3> x{a * kPi / 4, b * kPi / 2, c * kPi / 4 - kPi};
        const double f = fidelity(x);
        if (f > best_f) {
          best_f = f;
          best = x;
        }
      }
  for (double step = kPi / 8; step > 1e-9; step /= 2.0) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int k = 0; k < 3; ++k)
        for (double s : {-step, step}) {
          auto x = best;
          x[k] += s;
          const double f = fidelity(x);
          if (f > best_f) {
            best_f = f;
            best = x;
            improved = true;
          }
        }
    }
  }
  // (tz + 2 pi, phi) and (tz, phi + pi) describe the same gate; keep the
  // smallest target correction so the axis is a continuous function.
  const double turns = std::round(best[1] / (2.0 * kPi));
  FrameFit out{wrap(best[0]), best[1] - 2.0 * kPi * turns, wrap(best[2] + kPi * turns), 0.0,
               best_f};
  const Matrix corrected = corrections_applied(block4, out.control_z_rad, out.target_z_rad);
  out.control0_axis_rad = dynamics::rotation_of(corrected.topLeftCorner(2, 2)).azimuth();
  return out;
}

Matrix CrossResonanceCalibrator::corrected_gate(const CrossResonanceParams& cr,
                                                const SingleQubitParams& control,
                                                double t0) const {
  const auto& m = sim_.model();
  const Vector pre = dynamics::virtual_z_diagonal(m, kTarget, cr.target_z_rad / 2.0);
  const Vector post =
      dynamics::virtual_z_diagonal(m, kControl, cr.control_z_rad).cwiseProduct(pre);
  return post.asDiagonal() * raw_gate(cr, control, t0) * pre.asDiagonal();
}

double CrossResonanceCalibrator::gate_fidelity(const CrossResonanceParams& cr,
                                               const SingleQubitParams& control) const {
  const Matrix block = dynamics::qubit_subspace(corrected_gate(cr, control), sim_.model().levels(), 2);
  return dynamics::average_gate_fidelity(block, dynamics::ideal_gate_unitary("ZX90"));
}

FrameFit CrossResonanceCalibrator::tomography(const CrossResonanceParams& cr,
                                              const SingleQubitParams& control) const {
  return fit_frame(dynamics::qubit_subspace(raw_gate(cr, control), sim_.model().levels(), 2));
}

double CrossResonanceCalibrator::zx_angle(const CrossResonanceParams& cr,
                                          const SingleQubitParams& control) const {
  const Matrix block = dynamics::qubit_subspace(raw_gate(cr, control), sim_.model().levels(), 2);
  const FrameFit f = fit_frame(block);
  const Matrix corrected = corrections_applied(block, f.control_z_rad, f.target_z_rad);
  return dynamics::rotation_of(corrected.topLeftCorner(2, 2)).angle;
}

double CrossResonanceCalibrator::rough_amplitude(const CrossResonanceParams& base,
                                                 const SingleQubitParams& control) const {
  CrossResonanceParams cr = base;
  auto angle = [&](double a) {
    cr.amplitude_MHz = a;
    return zx_angle(cr, control);
  };
  double a = 4.0;
  for (int i = 0; i < 3; ++i) {
    const double th = angle(a);
    if (!(th > 1e-6)) throw ConvergenceError(fmt::format("{}: no CR response", edge_));
    a *= (kPi / 2.0) / th;
  }
  return a;
}

Matrix CrossResonanceCalibrator::target_pulse(const SingleQubitParams& target,
                                              SingleQubitGate gate, double t0) const {
  const auto p = single_qubit_pulse(target, kTarget, gate);
  return dynamics::to_dressed_frame(sim_.model(), sim_.unitary(p, t0), t0, t0 + p.duration_ns);
}

double CrossResonanceCalibrator::target_excited(const Matrix& u) const {
  const auto& m = sim_.model();
  double p = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    if (m.level_of(i, kTarget) > 0) p += std::norm(u(i, 0));
  return p;
}

PingPongTrain CrossResonanceCalibrator::amplitude_train(const CrossResonanceParams& base,
                                                        const SingleQubitParams& control,
                                                        const SingleQubitParams&) const {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  PingPongTrain t;
  t.repetitions = {1, 2, 3, 4, 5};
  t.sign = [](int n) { return n % 2 == 1 ? 1 : -1; };
  t.signal = [this, base, control, counter](double amp, int n) {
    CrossResonanceParams cr = base;
    cr.amplitude_MHz = amp;
    const FrameFit f = tomography(cr, control);
    cr.control_z_rad = f.control_z_rad;
    cr.target_z_rad = f.target_z_rad;
    const double tg = echoed_cr_duration(cr, control);
    Matrix u = Matrix::Identity(sim_.model().dim(), sim_.model().dim());
    for (int k = 0; k < 2 * n - 1; ++k) u = corrected_gate(cr, control, k * tg) * u;
    CounterRng rng(derive_stream(options_.seed, kCrAmplitude, (*counter)++, n));
    return dynamics::sampled_probability(target_excited(u), options_.shots, rng);
  };
  return t;
}

PingPongTrain CrossResonanceCalibrator::phase_train(const CrossResonanceParams& base,
                                                    const SingleQubitParams& control,
                                                    const SingleQubitParams& target) const {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  PingPongTrain t;
  t.repetitions = {1, 2, 3, 4, 5};
  // P_N - 1/2 = -sin(2 N phi) / 2 for a ZX axis tilted by phi; the sign
  // with respect to the drive phase follows the axis-vs-phase slope.
  const int slope = axis_slope(base, control);
  t.sign = [slope](int) { return -slope; };
  t.signal = [this, base, control, target, counter](double phase, int n) {
    CrossResonanceParams cr = base;
    cr.phase_rad = phase;
    const FrameFit f = tomography(cr, control);
    cr.control_z_rad = f.control_z_rad;
    cr.target_z_rad = f.target_z_rad;
    const double tg = echoed_cr_duration(cr, control);
    double time = 0.0;
    Matrix u = target_pulse(target, SingleQubitGate::kX90, time);
    time += target.duration_ns;
    for (int k = 0; k < n; ++k) {
      u = corrected_gate(cr, control, time) * u;
      time += tg;
      u = corrected_gate(cr, control, time) * u;
      time += tg;
      u = target_pulse(target, SingleQubitGate::kX180, time) * u;
      time += target.duration_ns;
    }
    u = target_pulse(target, SingleQubitGate::kY90, time) * u;
    CounterRng rng(derive_stream(options_.seed, kCrPhase, (*counter)++, n));
    return dynamics::sampled_probability(target_excited(u), options_.shots, rng);
  };
  return t;
}

CalibrationResult CrossResonanceCalibrator::calibrate_amplitude(CalibrationStore& store) const {
  store.require_ready_for(edge_, "cr_amplitude");
  const CrossResonanceParams base = store.edge(edge_);
  const SingleQubitParams control = store.qubit(control_name_);
  const SingleQubitParams target = store.qubit(target_name_);
  const double x0 = base.amplitude_MHz > 0.0 ? base.amplitude_MHz : rough_amplitude(base, control);
  const auto train = amplitude_train(base, control, target);
  const auto r = ramped_ping_pong(train, x0, 0.01 * x0, {1, 3, 5},
                                  options_.amplitude_tolerance * x0 * 0.1, 0.25 * x0,
                                  options_.max_evaluations);
  CalibrationResult out{edge_, "cr_amplitude", x0, r.value, r.final_deviation,
                        r.first_residual, r.evaluations, false, false, ""};
  out.converged = r.converged && r.final_deviation <= options_.residual_tolerance +
                                                         shot_noise_allowance(options_.shots);
  out.alias_warning = r.first_residual > options_.alias_threshold;
  if (window() != device::CrWindow::kInWindow)
    out.note = fmt::format("edge outside the CR window ({})", device::to_string(window()));
  if (!out.converged)
    throw ConvergenceError(fmt::format("{}: CR amplitude did not converge", edge_));
  CrossResonanceParams cr = base;
  cr.amplitude_MHz = r.value;
  const FrameFit f = tomography(cr, control);
  store.commit_cr_amplitude(edge_, r.value, f.control_z_rad, f.target_z_rad, out);
  return out;
}

CalibrationResult CrossResonanceCalibrator::calibrate_phase(CalibrationStore& store) const {
  store.require_ready_for(edge_, "cr_phase");
  const CrossResonanceParams base = store.edge(edge_);
  const SingleQubitParams control = store.qubit(control_name_);
  const SingleQubitParams target = store.qubit(target_name_);
  const double x0 = base.phase_rad;
  const double tol = options_.phase_tolerance_deg * kPi / 180.0;
  const auto train = phase_train(base, control, target);
  const auto r = ramped_ping_pong(train, x0, 0.5 * kPi / 180.0, {1, 3, 5}, 0.1 * tol, 0.5,
                                  options_.max_evaluations);
  CalibrationResult out{edge_, "cr_phase", x0, r.value, r.final_deviation,
                        r.first_residual, r.evaluations, false, false, ""};
  out.converged = r.converged && r.final_deviation <= options_.residual_tolerance +
                                                         shot_noise_allowance(options_.shots);
  out.alias_warning = r.first_residual > options_.alias_threshold;
  if (!out.converged) throw ConvergenceError(fmt::format("{}: CR phase did not converge", edge_));
  CrossResonanceParams cr = base;
  cr.phase_rad = r.value;
  const FrameFit f = tomography(cr, control);
  store.commit_cr_phase(edge_, r.value, f.control_z_rad, f.target_z_rad, out);
  return out;
}

double CrossResonanceCalibrator::oracle_amplitude(const CrossResonanceParams& base,
                                                  const SingleQubitParams& control, double lo,
                                                  double hi) const {
  CrossResonanceParams cr = base;
  auto excess = [&](double a) {
    cr.amplitude_MHz = a;
    return zx_angle(cr, control) - kPi / 2.0;
  };
  const int n = 40;
  double prev_x = lo, prev_f = excess(lo);
  bool found = false;
  for (int k = 1; k <= n && !found; ++k) {
    const double x = lo + (hi - lo) * k / n;
    const double f = excess(x);
    if ((f > 0.0) != (prev_f > 0.0)) {
      lo = prev_x;
      hi = x;
      found = true;
    }
    prev_x = x;
    prev_f = f;
  }
  if (!found) throw ConvergenceError(fmt::format("{}: CR amplitude oracle found no crossing", edge_));
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double CrossResonanceCalibrator::oracle_phase(const CrossResonanceParams& base,
                                              const SingleQubitParams& control) const {
  CrossResonanceParams cr = base;
  const int slope = axis_slope(base, control);
  for (int i = 0; i < 8; ++i) {
    const double axis = tomography(cr, control).control0_axis_rad;
    cr.phase_rad -= slope * axis;
    if (std::abs(axis) < 1e-10) break;
  }
  return cr.phase_rad;
}

int CrossResonanceCalibrator::axis_slope(const CrossResonanceParams& base,
                                         const SingleQubitParams& control) const {
  CrossResonanceParams cr = base;
  const double a0 = tomography(cr, control).axis_rad;
  cr.phase_rad += 0.1;
  const double a1 = tomography(cr, control).axis_rad;
  return wrap(a1 - a0) > 0.0 ? 1 : -1;
}

}  // namespace qlattice::calibration
