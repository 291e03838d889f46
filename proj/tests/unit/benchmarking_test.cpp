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

#include <algorithm>
#include <cmath>
#include <set>

#include "qlattice/benchmarking/clifford_group.hpp"
#include "qlattice/benchmarking/decay_fit.hpp"
#include "qlattice/benchmarking/gate_set.hpp"
#include "qlattice/benchmarking/pauli.hpp"
#include "qlattice/benchmarking/rb.hpp"
#include "qlattice/benchmarking/tableau.hpp"
#include "qlattice/common/errors.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/gates.hpp"

namespace qlattice::benchmarking {
namespace {

using dynamics::Matrix;

calibration::SingleQubitParams calibrated_qubit() {
  calibration::SingleQubitParams q;
  q.amp_x90_MHz = 8.763622;
  q.amp_x180_MHz = 17.530313;
  q.drag = 0.0339;
  q.pi2_done = q.pi_done = q.drag_done = true;
  return q;
}

// -------------------------------------------------------------- tableaux

TEST(Pauli, ProductAndCommutation) {
  const Pauli x = Pauli::single('X', 0), z = Pauli::single('Z', 0);
  EXPECT_FALSE(commutes(x, z));
  EXPECT_TRUE(commutes(x, Pauli::single('Z', 1)));
  const Pauli xz = x * z;
  EXPECT_LT((pauli_matrix(xz, 1) - pauli_matrix(x, 1) * pauli_matrix(z, 1)).norm(), 1e-12);
  const Pauli y = Pauli::single('Y', 0);
  EXPECT_LT((pauli_matrix(y, 1) - dynamics::Complex(0, 1) * pauli_matrix(xz, 1)).norm(), 1e-12);
}

TEST(Tableau, FromUnitaryMatchesConjugation) {
  const Matrix h = dynamics::ideal_gate_unitary("Y90");
  const Tableau t = Tableau::from_unitary(h, 1);
  // Y90 maps X -> -Z and Z -> X.
  EXPECT_EQ(t.image_x(0), (Pauli{0, 1, 2}));
  EXPECT_EQ(t.image_z(0), (Pauli{1, 0, 0}));
  EXPECT_EQ(t.then(t.inverse()), Tableau::identity(1));
}

// ---------------------------------------------------------- Clifford group

TEST(CliffordGroup, Orders) {
  EXPECT_EQ(CliffordGroup::single_qubit().size(), 24);
  EXPECT_EQ(CliffordGroup::two_qubit().size(), 11520);
  EXPECT_THROW(CliffordGroup::of_width(3), ValidationError);
}

TEST(CliffordGroup, GroupAxioms) {
  for (int n : {1, 2}) {
    const auto& g = CliffordGroup::of_width(n);
    CounterRng rng(derive_stream(11, n));
    for (int k = 0; k < 1000; ++k) {
      const int a = g.random(rng), b = g.random(rng), c = g.random(rng);
      const int ab = g.compose(a, b);
      ASSERT_GE(ab, 0);
      EXPECT_EQ(g.compose(ab, c), g.compose(a, g.compose(b, c)));
      EXPECT_EQ(g.compose(a, g.identity()), a);
      EXPECT_EQ(g.compose(g.identity(), a), a);
      EXPECT_EQ(g.compose(a, g.inverse(a)), g.identity());
    }
  }
}

TEST(CliffordGroup, SingleQubitDrawsAreUniform) {
  const auto& g = CliffordGroup::single_qubit();
  CounterRng rng(5);
  std::vector<int> counts(24, 0);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) ++counts[g.random(rng)];
  double chi2 = 0.0;
  const double expected = draws / 24.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 49.7);  // 99.9% quantile, 23 degrees of freedom
}

TEST(CliffordGroup, TwoQubitDrawsReachEveryElement) {
  const auto& g = CliffordGroup::two_qubit();
  CounterRng rng(6);
  std::vector<bool> seen(g.size(), false);
  int distinct = 0;
  for (int k = 0; k < 300000 && distinct < g.size(); ++k) {
    const int i = g.random(rng);
    if (!seen[i]) {
      seen[i] = true;
      ++distinct;
    }
  }
  EXPECT_EQ(distinct, 11520);
}

TEST(CliffordGroup, SeededDrawsRepeat) {
  const auto& g = CliffordGroup::two_qubit();
  EXPECT_EQ(random_sequence(g, 50, 9, 0, 3), random_sequence(g, 50, 9, 0, 3));
  EXPECT_NE(random_sequence(g, 50, 9, 0, 3), random_sequence(g, 50, 9, 0, 4));
}

TEST(CliffordGroup, DecompositionsReproduceTableaux) {
  for (int n : {1, 2}) {
    const auto& g = CliffordGroup::of_width(n);
    CounterRng rng(derive_stream(12, n));
    const int checks = n == 1 ? g.size() : 200;
    for (int k = 0; k < checks; ++k) {
      const int i = n == 1 ? k : g.random(rng);
      const Matrix u = gate_list_unitary(g.gates(i), n);
      EXPECT_EQ(Tableau::from_unitary(u, n), g.tableau(i)) << "element " << i;
      for (const auto& op : g.gates(i))
        EXPECT_TRUE(op.gate != Primitive::kZX90 || n == 2);
    }
  }
  const auto& id = CliffordGroup::single_qubit().gates(0);
  EXPECT_TRUE(std::all_of(id.begin(), id.end(),
                          [](const GateOp& op) { return op.gate == Primitive::kIdle; }));
}

TEST(CliffordGroup, TwoQubitClassSizesAndMeanZXCount) {
  const auto& g = CliffordGroup::two_qubit();
  EXPECT_EQ(g.class_sizes(), (std::vector<int>{576, 5184, 5184, 576}));
  CounterRng rng(13);
  double total = 0.0;
  for (int k = 0; k < 10000; ++k) total += g.cr_count(g.random(rng));
  EXPECT_NEAR(total / 10000.0, 1.5, 0.02);
}

TEST(CliffordGroup, InverseReturnsToIdentity) {
  for (int n : {1, 2}) {
    const auto& g = CliffordGroup::of_width(n);
    const auto seq = random_sequence(g, 100, 21, 0, 0);
    const auto full = with_inverse(g, seq);
    ASSERT_EQ(full.size(), 101u);
    Tableau total = Tableau::identity(n);
    Matrix u = Matrix::Identity(1 << n, 1 << n);
    for (int s : full) {
      total = total.then(g.tableau(s));
      u = gate_list_unitary(g.gates(s), n) * u;
    }
    EXPECT_EQ(total, Tableau::identity(n));
    EXPECT_NEAR(std::norm(u(0, 0)), 1.0, 1e-9);
    const int single = g.random(*std::make_unique<CounterRng>(3));
    EXPECT_EQ(inverse_clifford(g, {single}), g.inverse(single));
    EXPECT_EQ(inverse_clifford(g, {g.identity()}), g.identity());
  }
}

// -------------------------------------------------------------- decay fit

TEST(DecayFit, FidelityRelation) {
  EXPECT_DOUBLE_EQ(fidelity_from_p(1.0, 2), 1.0);
  EXPECT_NEAR(p_from_fidelity(0.9986, 2), 0.9972, 1e-12);
  EXPECT_NEAR(p_from_fidelity(0.9396, 4), 0.91947, 1e-5);
  EXPECT_NEAR(fidelity_from_p(0.91947, 4), 0.9396, 1e-5);
  EXPECT_NEAR(per_primitive_fidelity(0.97, 1.5), 0.98, 1e-12);
}

TEST(DecayFit, ExactSyntheticData) {
  const auto lengths = default_lengths(1);
  std::vector<double> y;
  for (int m : lengths) y.push_back(0.5 * std::pow(0.99, m) + 0.5);
  const auto f = fit_rb_decay(lengths, y, 2);
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.p, 0.99, 1e-6);
  EXPECT_NEAR(f.A, 0.5, 1e-6);
  EXPECT_NEAR(f.B, 0.5, 1e-6);
}

TEST(DecayFit, PerfectDataGivesUnitFidelity) {
  const auto lengths = default_lengths(2);
  const std::vector<double> y(lengths.size(), 1.0);
  const auto f = fit_rb_decay(lengths, y, 4);
  EXPECT_DOUBLE_EQ(f.fidelity, 1.0);
}

TEST(DecayFit, ShotNoiseRecovery) {
  // Synthetic records shaped like a benchmarking run: 30 randomizations of
  // 2000 shots at every length, fitted through the record's own path.
  double worst = 0.0;
  for (double p_true : {0.99, 0.995, 0.9972}) {
    for (int trial = 0; trial < 100; ++trial) {
      CounterRng rng(derive_stream(77, trial));
      RbRecord rec;
      rec.n_qubits = 1;
      rec.lengths = default_lengths(1);
      rec.randomizations = 30;
      for (int m : rec.lengths) {
        const double p = 0.5 * std::pow(p_true, m) + 0.5;
        std::vector<double> row;
        for (int r = 0; r < 30; ++r)
          row.push_back(static_cast<double>(rng.binomial(2000, p)) / 2000.0);
        rec.survival.push_back(row);
      }
      rec.summarize();
      worst = std::max(worst, std::abs(rec.fit().p - p_true));
    }
  }
  EXPECT_LT(worst, 0.002);
}

TEST(DecayFit, NeedsFourLengths) {
  EXPECT_THROW(fit_rb_decay({1, 2, 3}, {1, 0.9, 0.8}, 2), ValidationError);
}

// --------------------------------------------------------------------- RB

TEST(Rb, DepolarizingOracle) {
  RbOptions o;
  o.lengths = default_lengths(1);
  const auto one = run_depolarizing_rb(1, 0.002, o).fit();
  EXPECT_NEAR(one.p, 1.0 - 0.004, 0.002);
  o.lengths = default_lengths(2);
  const auto two = run_depolarizing_rb(2, 0.02, o).fit();
  EXPECT_NEAR(two.p, 1.0 - 0.02 * 4.0 / 3.0, 0.002);
  EXPECT_THROW(run_depolarizing_rb(1, 0.9, o), ValidationError);
}

TEST(Rb, NoiselessSingleQubitSurvives) {
  dynamics::HamiltonianModel m({{5.303, -340.0}}, {});
  SetSimulator sim(m, dynamics::NoiseChannels::none(1),
                   GateSet({"Q1", {0}, {"Q1"}, {calibrated_qubit()}, {}}));
  RbOptions o;
  o.lengths = {1, 50, 100};
  o.randomizations = 5;
  const auto r = run_rb(sim, o);
  for (double s : r.mean) EXPECT_GE(s, 0.999);
  for (const auto& row : r.survival)
    for (double s : row) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
}

TEST(Rb, ThreadCountDoesNotChangeRecords) {
  dynamics::HamiltonianModel m({{5.303, -340.0}}, {});
  dynamics::NoiseChannels n;
  n.t1_us = {33.2};
  n.t2echo_us = {16.9};
  SetSimulator sim(m, n, GateSet({"Q1", {0}, {"Q1"}, {calibrated_qubit()}, {}}));
  RbOptions o;
  o.lengths = {1, 20, 60};
  o.randomizations = 4;
  o.shots = 300;
  const auto a = run_rb(sim, o);
  o.threads = 3;
  const auto b = run_rb(sim, o);
  EXPECT_EQ(a.survival, b.survival);
}

TEST(Rb, UncalibratedGateSetRejected) {
  calibration::CalibrationStore store;
  store.set_initial_qubit("Q1", {});
  EXPECT_THROW(gate_set_from_store(store, "Q1", {0}), OrderingError);
  store.set_initial_qubit("Q1", calibrated_qubit());
  store.set_initial_qubit("Q2", calibrated_qubit());
  calibration::CrossResonanceParams cr;
  cr.control = "Q1";
  cr.target = "Q2";
  store.set_initial_edge("CR12", cr);
  EXPECT_THROW(gate_set_from_store(store, "CR12", {0, 1}), OrderingError);
  EXPECT_EQ(gate_set_from_store(store, "Q1", {0}).names, std::vector<std::string>{"Q1"});
}

}  // namespace
}  // namespace qlattice::benchmarking
