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

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qlattice/dynamics/hamiltonian.hpp"
#include "qlattice/dynamics/noise.hpp"
#include "qlattice/dynamics/pulse.hpp"

namespace qlattice::dynamics {

struct IntegratorOptions {
  /// Sample interval of the piecewise-constant propagators.
  double dt_ns = 0.1;
  /// Largest tolerated element-wise change when the step is halved.
  double tolerance = 1e-7;
  /// Smallest step the halving loop may reach before giving up.
  double min_dt_ns = 0.1 / 64.0;
  /// Run the step-halving check (costs three integrations per propagator).
  bool verify = true;
  /// Interval of the Strang splitting between coherent and dissipative parts.
  double noise_chunk_ns = 1.0;
};

/// Rotating-frame Hamiltonian (GHz) at absolute time t with the given pulses.
Matrix total_hamiltonian(const HamiltonianModel& model,
                         const std::vector<ScheduledPulse>& pulses, double t_ns);

/// exp(-i K) for Hermitian K, via its eigendecomposition.
Matrix hermitian_exponential(const Matrix& k);

/// Fourth-order two-point Magnus step U(t + h, t).
Matrix magnus_step(const HamiltonianModel& model,
                   const std::vector<ScheduledPulse>& pulses, double t_ns,
                   double h_ns);

/// U(t1, t0) from uniform Magnus steps no longer than dt.
Matrix propagate(const HamiltonianModel& model, const std::vector<ScheduledPulse>& pulses,
                 double t0_ns, double t1_ns, double dt_ns);

/// U(t1, t0) with step halving until successive results agree to
/// `options.tolerance`; throws ConvergenceError at `min_dt_ns`.
Matrix propagate_verified(const HamiltonianModel& model,
                          const std::vector<ScheduledPulse>& pulses, double t0_ns,
                          double t1_ns, const IntegratorOptions& options,
                          double* accepted_dt_ns = nullptr);

/// Conjugates a propagator (or applies the superoperator analogue) by a
/// diagonal unitary q: returns diag(q) m diag(q)^dag.
Matrix conjugate_by_diagonal(const Matrix& m, const Vector& q);
/// Superoperator version: S -> (q* (x) q) S (q* (x) q)^dag in column stacking.
Matrix conjugate_superoperator_by_diagonal(const Matrix& s, const Vector& q);

/// conj(U) (x) U, the column-stacked superoperator of rho -> U rho U^dag.
Matrix unitary_superoperator(const Matrix& u);

/// Caches single-pulse propagators computed from t = 0 and moves them to any
/// start time with the diagonal frame shift.  The pulse must be the only
/// carrier inside its J-connected component while it plays.  Thread-safe.
class PulseSimulator {
 public:
  PulseSimulator(HamiltonianModel model, IntegratorOptions options = {},
                 NoiseChannels noise = {});

  const HamiltonianModel& model() const { return model_; }
  const NoiseChannels& noise() const { return noise_; }
  const IntegratorOptions& options() const { return options_; }
  bool noisy() const { return noisy_; }

  /// Absolute carrier frequency (GHz) of a pulse.
  double carrier_GHz(const PulseEnvelope& pulse) const;
  /// Frame-shift diagonal for a pulse starting at t0.
  Vector pulse_frame_shift(const PulseEnvelope& pulse, double t0_ns) const;
  /// Frame-shift diagonal for free evolution starting at t0.
  Vector idle_frame_shift(double t0_ns) const;

  /// Coherent propagator of the pulse over [t0, t0 + duration].
  Matrix unitary(const PulseEnvelope& pulse, double t0_ns = 0.0) const;
  /// Noisy superoperator (column-stacked) of the pulse over the same span.
  Matrix superoperator(const PulseEnvelope& pulse, double t0_ns = 0.0) const;
  /// Free evolution over [t0, t0 + duration].
  Matrix idle_unitary(double duration_ns, double t0_ns = 0.0) const;
  Matrix idle_superoperator(double duration_ns, double t0_ns = 0.0) const;

  /// Coherent propagators of consecutive slices of at most `chunk_ns`,
  /// computed from t = 0 (shift each with pulse_frame_shift).
  const std::vector<Matrix>& chunk_unitaries(const PulseEnvelope& pulse,
                                             double chunk_ns) const;

  struct CachedUnitary {
    Matrix u;
    double dt_ns;
  };

 private:
  using Key = std::array<double, 12>;
  static Key key_of(const PulseEnvelope& pulse, double extra = 0.0);
  const CachedUnitary& cached_unitary(const PulseEnvelope& pulse) const;
  const Matrix& cached_superoperator(const PulseEnvelope& pulse) const;

  HamiltonianModel model_;
  IntegratorOptions options_;
  NoiseChannels noise_;
  bool noisy_ = false;
  Eigen::VectorXd idle_g_;   // diagonal of G for free evolution
  Matrix idle_static_;       // H~ + G (GHz), time independent
  Matrix half_chunk_dissipator_;
  Matrix idle_lindbladian_;  // in the co-moving frame of G

  mutable std::mutex mutex_;
  mutable std::map<Key, std::unique_ptr<CachedUnitary>> unitaries_;
  mutable std::map<Key, std::unique_ptr<Matrix>> superoperators_;
  mutable std::map<Key, std::unique_ptr<std::vector<Matrix>>> chunks_;
  mutable std::map<long long, std::unique_ptr<Matrix>> idle_superoperators_;
};

}  // namespace qlattice::dynamics
