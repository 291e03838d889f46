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

#include "qlattice/dynamics/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_difference(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

Matrix total_hamiltonian(const HamiltonianModel& model,
                         const std::vector<ScheduledPulse>& pulses, double t) {
  Matrix h = model.rotating_static(t);
  for (const auto& sp : pulses) {
    const double tau = t - sp.start_ns;
    if (tau < 0.0 || tau > sp.pulse.duration_ns) continue;
    const auto& p = sp.pulse;
    const int ch = p.channel;
    const double carrier =
        model.dressed_f01(p.carrier_transmon()) + p.ssb_detuning_MHz * 1e-3;
    const double theta = kTwoPi * (carrier - model.frame()[ch]) * t + p.phase_rad;
    const Complex drive = 0.5e-3 * p.complex_envelope(tau) * std::polar(1.0, -theta);
    const Matrix& a = model.lowering(ch);
    const Matrix term = drive * a.adjoint();
    h += term + term.adjoint();
    const double delta = p.detuning_MHz(tau) * 1e-3;
    if (delta != 0.0) h.diagonal() += delta * model.number_diagonal(ch).cast<Complex>();
  }
  return h;
}

Matrix hermitian_exponential(const Matrix& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(k);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigensolver failed inside a propagator step");
  const Eigen::VectorXd& lam = solver.eigenvalues();
  Vector phases(lam.size());
  for (int i = 0; i < lam.size(); ++i) phases(i) = std::polar(1.0, -lam(i));
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Matrix magnus_step(const HamiltonianModel& model,
                   const std::vector<ScheduledPulse>& pulses, double t, double h) {
  static const double offset = std::sqrt(3.0) / 6.0;
  const Matrix h1 = total_hamiltonian(model, pulses, t + h * (0.5 - offset));
  const Matrix h2 = total_hamiltonian(model, pulses, t + h * (0.5 + offset));
  // With A = -i 2 pi H: Omega = h (A1 + A2)/2 + (sqrt3/12) h^2 [A2, A1]
  // = -i 2 pi h (H1 + H2)/2 - (sqrt3/12) h^2 (2 pi)^2 [H2, H1], and
  // exp(Omega) = exp(-i K) with K = i Omega Hermitian.
  const Matrix comm = h2 * h1 - h1 * h2;
  const Complex i(0.0, 1.0);
  Matrix k = (kTwoPi * h * 0.5) * (h1 + h2) +
             (-i * (std::sqrt(3.0) / 12.0) * h * h * kTwoPi * kTwoPi) * comm;
  // Symmetrize against round-off before the Hermitian eigensolver.
  k = 0.5 * (k + k.adjoint()).eval();
  return hermitian_exponential(k);
}

Matrix propagate(const HamiltonianModel& model, const std::vector<ScheduledPulse>& pulses,
                 double t0, double t1, double dt) {
  const int d = model.dim();
  Matrix u = Matrix::Identity(d, d);
  const double span = t1 - t0;
  if (span <= 0.0) return u;
  const int steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
  const double h = span / steps;
  for (int s = 0; s < steps; ++s) u = magnus_step(model, pulses, t0 + s * h, h) * u;
  return u;
}

Matrix propagate_verified(const HamiltonianModel& model,
                          const std::vector<ScheduledPulse>& pulses, double t0,
                          double t1, const IntegratorOptions& options,
                          double* accepted_dt_ns) {
  double dt = options.dt_ns;
  Matrix coarse = propagate(model, pulses, t0, t1, dt);
  if (!options.verify) {
    if (accepted_dt_ns) *accepted_dt_ns = dt;
    return coarse;
  }
  while (true) {
    Matrix fine = propagate(model, pulses, t0, t1, dt / 2.0);
    const double err = max_abs_difference(coarse, fine);
    if (err <= options.tolerance) {
      if (accepted_dt_ns) *accepted_dt_ns = dt;
      return fine;
    }
    dt /= 2.0;
    if (dt < options.min_dt_ns)
      throw ConvergenceError(fmt::format(
          "step halving did not reach tolerance {:.1e} (last change {:.2e})",
          options.tolerance, err));
    coarse = std::move(fine);
  }
}

Matrix conjugate_by_diagonal(const Matrix& m, const Vector& q) {
  return q.asDiagonal() * m * q.conjugate().asDiagonal();
}

Matrix conjugate_superoperator_by_diagonal(const Matrix& s, const Vector& q) {
  const int d = static_cast<int>(q.size());
  Vector w(d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) w(i + d * j) = q(i) * std::conj(q(j));
  return w.asDiagonal() * s * w.conjugate().asDiagonal();
}

Matrix unitary_superoperator(const Matrix& u) {
  return Eigen::kroneckerProduct(u.conjugate(), u).eval();
}

PulseSimulator::PulseSimulator(HamiltonianModel model, IntegratorOptions options,
                               NoiseChannels noise)
    : model_(std::move(model)), options_(options), noise_(std::move(noise)) {
  const int n = model_.n_transmons();
  if (noise_.t1_us.empty()) noise_ = NoiseChannels::none(n);
  noise_.validate(n);
  noisy_ = !noise_.silent();
  if (!(options_.dt_ns > 0.0) || !(options_.noise_chunk_ns > 0.0))
    throw ValidationError("integrator steps must be positive");

  idle_g_ = Eigen::VectorXd::Zero(model_.dim());
  for (int k = 0; k < n; ++k) {
    const double ref = model_.frame()[model_.component(k).front()];
    idle_g_ += (model_.frame()[k] - ref) * model_.number_diagonal(k);
  }
  idle_static_ = model_.rotating_static(0.0);
  idle_static_.diagonal() += idle_g_.cast<Complex>();
  if (noisy_ && model_.dim() <= 27) {
    idle_lindbladian_ = lindblad_generator(idle_static_, model_, noise_);
  }
}

double PulseSimulator::carrier_GHz(const PulseEnvelope& pulse) const {
  return model_.dressed_f01(pulse.carrier_transmon()) + pulse.ssb_detuning_MHz * 1e-3;
}

Vector PulseSimulator::pulse_frame_shift(const PulseEnvelope& pulse, double t0) const {
  return frame_shift_diagonal(model_, model_.component(pulse.channel),
                              carrier_GHz(pulse), t0);
}

Vector PulseSimulator::idle_frame_shift(double t0) const {
  Vector out(model_.dim());
  for (int i = 0; i < model_.dim(); ++i)
    out(i) = std::polar(1.0, kTwoPi * idle_g_(i) * t0);
  return out;
}

PulseSimulator::Key PulseSimulator::key_of(const PulseEnvelope& p, double extra) {
  return {static_cast<double>(p.shape), p.duration_ns, p.sigma_ns, p.rise_ns,
          p.amplitude_MHz, p.drag_coefficient, p.phase_rad, p.ssb_detuning_MHz,
          static_cast<double>(p.channel), static_cast<double>(p.carrier_transmon()),
          extra, 0.0};
}

const PulseSimulator::CachedUnitary& PulseSimulator::cached_unitary(
    const PulseEnvelope& pulse) const {
  const Key key = key_of(pulse);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = unitaries_.find(key);
    if (it != unitaries_.end()) return *it->second;
  }
  pulse.validate();
  if (pulse.channel >= model_.n_transmons() ||
      pulse.carrier_transmon() >= model_.n_transmons())
    throw ValidationError("pulse channel is not part of the model");
  auto entry = std::make_unique<CachedUnitary>();
  const std::vector<ScheduledPulse> one{{0.0, pulse}};
  entry->u = propagate_verified(model_, one, 0.0, pulse.duration_ns, options_,
                                &entry->dt_ns);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = unitaries_.emplace(key, std::move(entry));
  return *it->second;
}

Matrix PulseSimulator::unitary(const PulseEnvelope& pulse, double t0) const {
  const Matrix& u = cached_unitary(pulse).u;
  if (t0 == 0.0) return u;
  return conjugate_by_diagonal(u, pulse_frame_shift(pulse, t0));
}

const Matrix& PulseSimulator::cached_superoperator(const PulseEnvelope& pulse) const {
  const Key key = key_of(pulse);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = superoperators_.find(key);
    if (it != superoperators_.end()) return *it->second;
  }
  const double dt = cached_unitary(pulse).dt_ns;
  const int d = model_.dim();
  const std::vector<ScheduledPulse> one{{0.0, pulse}};
  const int chunks = std::max(
      1, static_cast<int>(std::ceil(pulse.duration_ns / options_.noise_chunk_ns - 1e-9)));
  const double hc = pulse.duration_ns / chunks;
  const Matrix dissipator =
      lindblad_generator(Matrix::Zero(d, d), model_, noise_);
  const Matrix half = (dissipator * (0.5 * hc)).exp();
  auto s = std::make_unique<Matrix>(Matrix::Identity(d * d, d * d));
  for (int c = 0; c < chunks; ++c) {
    const Matrix u = propagate(model_, one, c * hc, (c + 1) * hc, dt);
    *s = half * (unitary_superoperator(u) * (half * *s));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = superoperators_.emplace(key, std::move(s));
  return *it->second;
}

Matrix PulseSimulator::superoperator(const PulseEnvelope& pulse, double t0) const {
  if (!noisy_) return unitary_superoperator(unitary(pulse, t0));
  const Matrix& s = cached_superoperator(pulse);
  if (t0 == 0.0) return s;
  return conjugate_superoperator_by_diagonal(s, pulse_frame_shift(pulse, t0));
}

Matrix PulseSimulator::idle_unitary(double duration, double t0) const {
  if (duration < 0.0) throw ValidationError("idle duration must be non-negative");
  Vector g_phase(model_.dim());
  for (int i = 0; i < model_.dim(); ++i)
    g_phase(i) = std::polar(1.0, kTwoPi * idle_g_(i) * duration);
  const Matrix u = g_phase.asDiagonal() *
                   hermitian_exponential((kTwoPi * duration) * idle_static_);
  if (t0 == 0.0) return u;
  return conjugate_by_diagonal(u, idle_frame_shift(t0));
}

Matrix PulseSimulator::idle_superoperator(double duration, double t0) const {
  if (!noisy_) return unitary_superoperator(idle_unitary(duration, t0));
  if (idle_lindbladian_.size() == 0)
    throw ValidationError("noisy superoperators are limited to small subsystems");
  const long long key = std::llround(duration * 1e4);
  const Matrix* base = nullptr;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = idle_superoperators_.find(key);
    if (it != idle_superoperators_.end()) base = it->second.get();
  }
  if (!base) {
    Vector g_phase(model_.dim());
    for (int i = 0; i < model_.dim(); ++i)
      g_phase(i) = std::polar(1.0, kTwoPi * idle_g_(i) * duration);
    auto s = std::make_unique<Matrix>(unitary_superoperator(g_phase.asDiagonal()) *
                                      (idle_lindbladian_ * duration).exp());
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = idle_superoperators_.emplace(key, std::move(s));
    base = it->second.get();
  }
  if (t0 == 0.0) return *base;
  return conjugate_superoperator_by_diagonal(*base, idle_frame_shift(t0));
}

const std::vector<Matrix>& PulseSimulator::chunk_unitaries(const PulseEnvelope& pulse,
                                                           double chunk_ns) const {
  const Key key = key_of(pulse, chunk_ns);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = chunks_.find(key);
    if (it != chunks_.end()) return *it->second;
  }
  const double dt = cached_unitary(pulse).dt_ns;
  const std::vector<ScheduledPulse> one{{0.0, pulse}};
  const int n = std::max(1, static_cast<int>(std::ceil(pulse.duration_ns / chunk_ns - 1e-9)));
  auto list = std::make_unique<std::vector<Matrix>>();
  list->reserve(n);
  for (int c = 0; c < n; ++c) {
    const double a = c * chunk_ns;
    const double b = std::min(pulse.duration_ns, (c + 1) * chunk_ns);
    list->push_back(propagate(model_, one, a, b, dt));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = chunks_.emplace(key, std::move(list));
  return *it->second;
}

}  // namespace qlattice::dynamics
