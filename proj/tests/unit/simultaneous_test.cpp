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
#include <memory>

#include "qlattice/benchmarking/rb.hpp"
#include "qlattice/benchmarking/simultaneous.hpp"
#include "qlattice/common/errors.hpp"

namespace qlattice::benchmarking {
namespace {

calibration::SingleQubitParams calibrated_qubit() {
  calibration::SingleQubitParams q;
  q.amp_x90_MHz = 8.763622;
  q.amp_x180_MHz = 17.530313;
  q.drag = 0.0339;
  q.pi2_done = q.pi_done = q.drag_done = true;
  return q;
}

std::unique_ptr<SetSimulator> qubit_set(const std::string& name, double f01, double t1,
                                        double t2) {
  dynamics::NoiseChannels n;
  n.t1_us = {t1};
  n.t2echo_us = {t2};
  return std::make_unique<SetSimulator>(dynamics::HamiltonianModel({{f01, -340.0}}, {}), n,
                                        GateSet({name, {0}, {name}, {calibrated_qubit()}, {}}));
}

class Simultaneous : public ::testing::Test {
 protected:
  Simultaneous()
      : a_(qubit_set("Q1", 5.303, 33.2, 16.9)), b_(qubit_set("Q2", 5.101, 36.0, 16.0)) {
    options_.lengths = {1, 20, 50, 100};
    options_.randomizations = 4;
  }
  std::vector<const SetSimulator*> sets() const { return {a_.get(), b_.get()}; }
  std::unique_ptr<SetSimulator> a_, b_;
  RbOptions options_;
};

TEST_F(Simultaneous, OverlappingSetsRejected) {
  auto clash = qubit_set("Q1", 5.2, 30.0, 20.0);
  CrosstalkOptions x;
  EXPECT_THROW(run_simultaneous({a_.get(), clash.get()}, options_, x), ValidationError);
  EXPECT_THROW(run_simultaneous({a_.get()}, options_, x), ValidationError);
  x.couplings = {{0, 3, 0.1}};
  EXPECT_THROW(run_simultaneous(sets(), options_, x), ValidationError);
}

TEST_F(Simultaneous, ZeroCrosstalkHasNoAddressabilityError) {
  const auto r = simultaneous_rb(sets(), options_, {});
  ASSERT_EQ(r.addressability.size(), 2u);
  for (int s = 0; s < 2; ++s) {
    EXPECT_LE(std::abs(r.addressability[s]), 0.001);
    EXPECT_LE(std::abs(r.individual_fit[s].p - r.simultaneous_fit[s].p),
              r.individual_fit[s].p_stderr + 1e-12);
    EXPECT_EQ(r.simultaneous[s].mode, "simultaneous");
  }
}

TEST_F(Simultaneous, TrajectoriesMatchExactSurvivalWithoutCoupling) {
  const auto& g = a_->group();
  std::vector<std::vector<int>> seqs;
  for (int s = 0; s < 2; ++s)
    seqs.push_back(with_inverse(g, random_sequence(g, 60, 5, s, 0)));
  std::vector<std::vector<double>> durations(2);
  for (int s = 0; s < 2; ++s)
    for (int e : seqs[s]) durations[s].push_back(sets()[s]->clifford_duration(e));
  const auto starts = aligned_starts(durations);

  CrosstalkOptions x;
  x.couplings = {{0, 0, 0.0}};
  x.trajectories = 1500;
  const auto traj = trajectory_survival(sets(), seqs, x, 1234);
  for (int s = 0; s < 2; ++s) {
    const double exact = sets()[s]->survival(seqs[s], starts);
    const double sigma = std::sqrt(exact * (1.0 - exact) / x.trajectories);
    EXPECT_NEAR(traj[s], exact, 4.0 * sigma + 1e-3) << "set " << s;
  }
}

TEST_F(Simultaneous, InjectedZZDegradesMonotonically) {
  std::vector<double> fidelity[2];
  for (double zz : {0.0, 0.2, 0.4, 0.8}) {
    CrosstalkOptions x;
    x.couplings = {{0, 0, zz}};
    x.trajectories = 24;
    const auto recs = run_simultaneous(sets(), options_, x);
    for (int s = 0; s < 2; ++s) fidelity[s].push_back(recs[s].fit().fidelity);
  }
  for (int s = 0; s < 2; ++s)
    for (std::size_t k = 1; k < fidelity[s].size(); ++k)
      EXPECT_LT(fidelity[s][k], fidelity[s][k - 1]) << "set " << s << " step " << k;
}

TEST_F(Simultaneous, ThreadCountDoesNotChangeRecords) {
  CrosstalkOptions x;
  x.couplings = {{0, 0, 0.3}};
  x.trajectories = 8;
  const auto one = run_simultaneous(sets(), options_, x);
  RbOptions o = options_;
  o.threads = 3;
  const auto three = run_simultaneous(sets(), o, x);
  for (int s = 0; s < 2; ++s) EXPECT_EQ(one[s].survival, three[s].survival);
}

}  // namespace
}  // namespace qlattice::benchmarking
