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

#include "qlattice/dynamics/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <optional>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

namespace {

constexpr double kTimeEps = 1e-9;

std::vector<double> event_times(const ControlSequence& seq) {
  std::vector<double> t{0.0, seq.duration_ns()};
  for (const auto& p : seq.pulses) {
    t.push_back(p.start_ns);
    t.push_back(p.end_ns());
  }
  for (const auto& z : seq.virtual_z) t.push_back(z.time_ns);
  std::sort(t.begin(), t.end());
  std::vector<double> out;
  for (double x : t)
    if (out.empty() || x - out.back() > kTimeEps) out.push_back(x);
  return out;
}

std::vector<ScheduledPulse> active_in(const ControlSequence& seq, double a, double b) {
  std::vector<ScheduledPulse> out;
  for (const auto& p : seq.pulses)
    if (p.start_ns < b - kTimeEps && p.end_ns() > a + kTimeEps) out.push_back(p);
  return out;
}

// One pass at a fixed maximum step.  `rho` is evolved in place when given;
// otherwise the unitary is accumulated.
void run_pass(const HamiltonianModel& model, const ControlSequence& seq, double dt,
              const NoiseChannels* noise, Matrix* rho, Matrix* unitary) {
  const auto times = event_times(seq);
  for (std::size_t e = 0; e < times.size(); ++e) {
    const double ta = times[e];
    for (const auto& z : seq.virtual_z) {
      if (std::abs(z.time_ns - ta) > kTimeEps) continue;
      const Vector q = virtual_z_diagonal(model, z.transmon, z.angle_rad);
      if (rho) *rho = conjugate_by_diagonal(*rho, q);
      if (unitary) *unitary = q.asDiagonal() * *unitary;
    }
    if (e + 1 == times.size()) break;
    const double tb = times[e + 1];
    const auto active = active_in(seq, ta, tb);
    const int steps = std::max(1, static_cast<int>(std::ceil((tb - ta) / dt - 1e-9)));
    const double h = (tb - ta) / steps;
    std::optional<DissipatorStep> half;
    if (noise && rho) half.emplace(model, *noise, 0.5 * h);
    for (int s = 0; s < steps; ++s) {
      const Matrix u = magnus_step(model, active, ta + s * h, h);
      if (rho) {
        if (half) half->apply(*rho);
        *rho = u * *rho * u.adjoint();
        if (half) half->apply(*rho);
      }
      if (unitary) *unitary = u * *unitary;
    }
  }
}

}  // namespace

Matrix basis_density_matrix(const HamiltonianModel& model, const std::vector<int>& levels) {
  if (static_cast<int>(levels.size()) != model.n_transmons())
    throw ValidationError("basis state needs one level per transmon");
  int index = 0;
  for (int l : levels) {
    if (l < 0 || l >= model.levels()) throw ValidationError("basis level out of range");
    index = index * model.levels() + l;
  }
  Matrix rho = Matrix::Zero(model.dim(), model.dim());
  rho(index, index) = 1.0;
  return rho;
}

Matrix ground_density_matrix(const HamiltonianModel& model) {
  return basis_density_matrix(model, std::vector<int>(model.n_transmons(), 0));
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

Matrix evolve(const HamiltonianModel& model, const ControlSequence& sequence,
              const Matrix& rho0, const NoiseChannels* noise,
              const IntegratorOptions& options) {
  sequence.validate(model.n_transmons());
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim())
    throw ValidationError("initial state dimension does not match the model");
  if (noise) noise->validate(model.n_transmons());
  double dt = options.dt_ns;
  Matrix coarse = rho0;
  run_pass(model, sequence, dt, noise, &coarse, nullptr);
  if (!options.verify) return coarse;
  while (true) {
    Matrix fine = rho0;
    run_pass(model, sequence, dt / 2.0, noise, &fine, nullptr);
    const double err = (fine - coarse).cwiseAbs().maxCoeff();
    if (err <= options.tolerance) return fine;
    dt /= 2.0;
    if (dt < options.min_dt_ns)
      throw ConvergenceError(fmt::format(
          "evolution did not reach tolerance {:.1e} by step halving (change {:.2e})",
          options.tolerance, err));
    coarse = std::move(fine);
  }
}

Matrix sequence_unitary(const HamiltonianModel& model, const ControlSequence& sequence,
                        const IntegratorOptions& options) {
  sequence.validate(model.n_transmons());
  double dt = options.dt_ns;
  Matrix coarse = Matrix::Identity(model.dim(), model.dim());
  run_pass(model, sequence, dt, nullptr, nullptr, &coarse);
  if (!options.verify) return coarse;
  while (true) {
    Matrix fine = Matrix::Identity(model.dim(), model.dim());
    run_pass(model, sequence, dt / 2.0, nullptr, nullptr, &fine);
    const double err = (fine - coarse).cwiseAbs().maxCoeff();
    if (err <= options.tolerance) return fine;
    dt /= 2.0;
    if (dt < options.min_dt_ns)
      throw ConvergenceError("sequence propagator did not converge under step halving");
    coarse = std::move(fine);
  }
}

}  // namespace qlattice::dynamics
