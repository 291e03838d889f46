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


#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/evolve.hpp"
#include "qlattice/dynamics/gates.hpp"
#include "qlattice/dynamics/hamiltonian.hpp"
#include "qlattice/dynamics/measurement.hpp"
#include "qlattice/dynamics/noise.hpp"
#include "qlattice/dynamics/propagator.hpp"
#include "qlattice/dynamics/pulse.hpp"

namespace qlattice::dynamics {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kX180Amplitude_MHz = 17.530313;
constexpr double kDrag = 0.0351;

PulseEnvelope x180(double drag) {
  PulseEnvelope p;
  p.duration_ns = 53.3;
  p.amplitude_MHz = kX180Amplitude_MHz;
  p.drag_coefficient = drag;
  return p;
}

double phase_insensitive_distance(const Matrix& a, const Matrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

TEST(Hamiltonian, SingleTransmonLadder) {
  HamiltonianModel m({{5.3, -340.0}}, {});
  const Matrix h = m.lab_hamiltonian();
  EXPECT_NEAR(h(0, 0).real(), 0.0, 1e-12);
  EXPECT_NEAR(h(1, 1).real(), 5.3, 1e-12);
  EXPECT_NEAR(h(2, 2).real(), 2 * 5.3 - 0.340, 1e-12);
  EXPECT_NEAR((h - h.diagonal().asDiagonal().toDenseMatrix()).norm(), 0.0, 1e-12);
}

TEST(Hamiltonian, ExchangeGivesAvoidedCrossingOfTwoJ) {
  const double J = 3.1;
  HamiltonianModel m({{5.1, -340.0}, {5.1, -340.0}}, {{0, 1, J}});
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.lab_hamiltonian());
  // levels: 0, then the two single-excitation states split by 2J
  const auto& e = es.eigenvalues();
  EXPECT_NEAR((e(2) - e(1)) * 1e3, 2.0 * J, 1e-6);
}

TEST(Hamiltonian, DressedFrequencyFollowsDetunedExchange) {
  const double J = 3.1, delta = 202.0;
  HamiltonianModel m({{5.303, -340.0}, {5.303 - delta * 1e-3, -340.0}}, {{0, 1, J}});
  const double shift = (std::sqrt(delta * delta / 4 + J * J) - delta / 2) * 1e-3;
  EXPECT_NEAR(m.dressed_f01(0), 5.303 + shift, 1e-6);
  HamiltonianModel bare({{5.303, -340.0}, {5.101, -340.0}}, {});
  EXPECT_NEAR(bare.dressed_f01(0), 5.303, 1e-9);
  EXPECT_NEAR(bare.dressed_f01(1), 5.101, 1e-9);
}

TEST(Hamiltonian, FourTransmonModelIsHermitian) {
  HamiltonianModel m({{5.303, -340}, {5.101, -340}, {5.291, -341}, {5.415, -340}},
                     {{0, 1, -3.0}, {1, 2, -2.5}, {2, 3, -3.2}, {3, 0, -2.6}});
  EXPECT_EQ(m.dim(), 81);
  const Matrix h = m.lab_hamiltonian();
  EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  ScheduledPulse p{0.0, x180(kDrag)};
  p.pulse.channel = 2;
  const Matrix ht = total_hamiltonian(m, {p}, 20.0);
  EXPECT_LT((ht - ht.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Evolve, ZeroAmplitudeIsIdentity) {
  HamiltonianModel m({{5.3, -340.0}}, {});
  ControlSequence seq;
  PulseEnvelope p = x180(0.0);
  p.amplitude_MHz = 0.0;
  seq.add(0.0, p);
  Matrix rho0 = Matrix::Zero(3, 3);
  rho0(0, 0) = 0.5;
  rho0(1, 1) = 0.5;
  rho0(0, 1) = 0.5;
  rho0(1, 0) = 0.5;
  const Matrix rho = evolve(m, seq, rho0);
  EXPECT_LT((rho - rho0).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Evolve, PreservesTraceAndPurity) {
  HamiltonianModel m({{5.303, -340}, {5.101, -340}}, {{0, 1, -3.0}});
  ControlSequence seq;
  PulseEnvelope p = x180(kDrag);
  seq.add(0.0, p);
  p.channel = 1;
  p.phase_rad = 0.7;
  seq.add(10.0, p);
  const Matrix rho = evolve(m, seq, ground_density_matrix(m));
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
  EXPECT_NEAR(purity(rho), 1.0, 1e-9);

  NoiseChannels noise;
  noise.t1_us = {30.0, 30.0};
  noise.t2echo_us = {20.0, 20.0};
  const Matrix noisy = evolve(m, seq, ground_density_matrix(m), &noise);
  EXPECT_NEAR(noisy.trace().real(), 1.0, 1e-9);
  EXPECT_LT(purity(noisy), 1.0);
}

TEST(Evolve, FreeDecayFollowsT1) {
  HamiltonianModel m({{5.3, -340.0}}, {});
  NoiseChannels noise;
  noise.t1_us = {33.2};
  noise.t2echo_us = {2.0 * 33.2};
  ControlSequence seq;
  seq.barriers_ns = {33.2e3};
  IntegratorOptions o;
  o.dt_ns = 50.0;
  const Matrix rho = evolve(m, seq, basis_density_matrix(m, {1}), &noise, o);
  EXPECT_NEAR(rho(1, 1).real() / std::exp(-1.0), 1.0, 1e-4);
}

TEST(Evolve, DragSuppressesLeakageOfCalibratedPi) {
  HamiltonianModel m({{5.303, -340.0}}, {});
  IntegratorOptions o;
  o.tolerance = 1e-9;
  auto run = [&](double drag) {
    ControlSequence seq;
    seq.add(0.0, x180(drag));
    return evolve(m, seq, ground_density_matrix(m), nullptr, o);
  };
  const Matrix with = run(kDrag);
  const Matrix without = run(0.0);
  EXPECT_GE(with(1, 1).real(), 0.999);
  EXPECT_LT(with(2, 2).real(), 1e-3);
  EXPECT_GT(without(2, 2).real(), with(2, 2).real());
  // Dense-step reference.
  IntegratorOptions dense;
  dense.dt_ns = 0.005;
  dense.verify = false;
  ControlSequence seq;
  seq.add(0.0, x180(kDrag));
  const Matrix ref = evolve(m, seq, ground_density_matrix(m), nullptr, dense);
  EXPECT_LT((with - ref).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Evolve, CalibratedDragIsLocalLeakageMinimum) {
  PulseSimulator sim(HamiltonianModel({{5.303, -340.0}}, {}));
  auto leak = [&](double drag) {
    const Matrix u = sim.unitary(x180(drag));
    return std::norm(u(2, 0));
  };
  EXPECT_LT(leak(kDrag), leak(0.8 * kDrag));
  EXPECT_LT(leak(kDrag), leak(1.2 * kDrag));
}

TEST(Evolve, PopulationsAreFrameInvariant) {
  HamiltonianModel m({{5.303, -340.0}}, {});
  const HamiltonianModel shifted = m.with_frame({5.303 + 0.05});
  ControlSequence seq;
  PulseEnvelope p = x180(kDrag);
  p.amplitude_MHz *= 0.5;
  seq.add(0.0, p);
  seq.add(60.0, p);
  const Matrix a = evolve(m, seq, ground_density_matrix(m));
  const Matrix b = evolve(shifted, seq, ground_density_matrix(shifted));
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(a(k, k).real(), b(k, k).real(), 1e-6);
}

TEST(Evolve, RejectsUnknownChannel) {
  HamiltonianModel m({{5.3, -340.0}}, {});
  ControlSequence seq;
  PulseEnvelope p = x180(0.0);
  p.channel = 3;
  seq.add(0.0, p);
  EXPECT_THROW(evolve(m, seq, ground_density_matrix(m)), ValidationError);
}

TEST(Pulse, EnvelopeVanishesOutsideWindow) {
  const PulseEnvelope p = x180(kDrag);
  EXPECT_EQ(p.in_phase(-1.0), 0.0);
  EXPECT_EQ(p.in_phase(54.0), 0.0);
  EXPECT_NEAR(p.in_phase(26.65), kX180Amplitude_MHz, 1e-9);
  PulseEnvelope bad = p;
  bad.duration_ns = 0.0;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(IdealGates, PauliXRotation) {
  const Matrix x = ideal_gate_unitary("X180");
  Matrix expected(2, 2);
  expected << 0, Complex(0, -1), Complex(0, -1), 0;
  EXPECT_LT(phase_insensitive_distance(x, expected), 1e-12);
}

TEST(IdealGates, ZXPowers) {
  const Matrix zx = ideal_gate_unitary("ZX90");
  const Matrix zx2 = zx * zx;
  Matrix zx_pi = Matrix::Zero(4, 4);
  // exp(-i pi/2 Z(x)X) = -i Z(x)X
  zx_pi(0, 1) = zx_pi(1, 0) = Complex(0, -1);
  zx_pi(2, 3) = zx_pi(3, 2) = Complex(0, 1);
  EXPECT_LT(phase_insensitive_distance(zx2, zx_pi), 1e-12);
  EXPECT_LT(phase_insensitive_distance(zx2 * zx2, Matrix::Identity(4, 4)), 1e-12);
}

TEST(IdealGates, ZXActionOnGround) {
  const Matrix zx = ideal_gate_unitary("ZX90");
  Vector ket = Vector::Zero(4);
  ket(0) = 1.0;
  const Vector out = zx * ket;
  EXPECT_NEAR(std::abs(out(0) - std::cos(kPi / 4)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(1) - Complex(0, -std::sin(kPi / 4))), 0.0, 1e-12);
  EXPECT_THROW(ideal_gate_unitary("H"), ValidationError);
}

TEST(Measurement, GroundStateAndAssignmentError) {
  HamiltonianModel m({{5.3, -340}, {5.1, -340}}, {});
  const auto p = outcome_probabilities(ground_density_matrix(m), 3, 2);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  HamiltonianModel one({{5.3, -340}}, {});
  const auto q = outcome_probabilities(ground_density_matrix(one), 3, 1, {0.04});
  EXPECT_NEAR(q[1], 0.04, 1e-15);
  Matrix mixed = Matrix::Zero(3, 3);
  mixed(0, 0) = mixed(1, 1) = 0.5;
  for (double e : {0.0, 0.1, 0.3}) {
    const auto r = outcome_probabilities(mixed, 3, 1, {e});
    EXPECT_NEAR(r[0], 0.5, 1e-15);
    EXPECT_NEAR(r[1], 0.5, 1e-15);
  }
  EXPECT_THROW(outcome_probabilities(mixed, 3, 1, {0.5}), ValidationError);
}

TEST(Measurement, SeededSamplingIsReproducible) {
  CounterRng a(7), b(7);
  const auto ca = sample_counts({0.2, 0.3, 0.5}, 1000, a);
  const auto cb = sample_counts({0.2, 0.3, 0.5}, 1000, b);
  EXPECT_EQ(ca, cb);
  EXPECT_EQ(ca[0] + ca[1] + ca[2], 1000u);
}

TEST(Noise, DephasingTimeFromEcho) {
  NoiseChannels n;
  n.t1_us = {33.2};
  n.t2echo_us = {16.9};
  EXPECT_NEAR(1.0 / n.tphi_us(0), 1.0 / 16.9 - 1.0 / (2 * 33.2), 1e-12);
  NoiseChannels bad;
  bad.t1_us = {10.0};
  bad.t2echo_us = {25.0};
  EXPECT_THROW(bad.validate(1), ValidationError);
  EXPECT_TRUE(NoiseChannels::none(2).silent());
}

}  // namespace
}  // namespace qlattice::dynamics
