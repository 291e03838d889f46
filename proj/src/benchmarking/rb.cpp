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

#include "qlattice/benchmarking/rb.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/parallel.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/measurement.hpp"

namespace qlattice::benchmarking {

namespace {

using dynamics::Matrix;
using dynamics::Vector;

constexpr std::uint64_t kShotTag = 0x5107;

struct Event {
  double time;
  bool is_pulse;
  std::size_t index;
};

std::vector<Event> ordered_events(const dynamics::ControlSequence& seq) {
  std::vector<Event> ev;
  for (std::size_t i = 0; i < seq.virtual_z.size(); ++i)
    ev.push_back({seq.virtual_z[i].time_ns, false, i});
  for (std::size_t i = 0; i < seq.pulses.size(); ++i)
    ev.push_back({seq.pulses[i].start_ns, true, i});
  // Frame updates at a boundary belong to the gate that just ended or to the
  // one about to start; either way they precede the next pulse.
  std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    return !a.is_pulse && b.is_pulse;
  });
  return ev;
}

double measured(double exact, const RbOptions& o, int set, int length, int r) {
  if (o.shots == 0) return exact;
  CounterRng rng(derive_stream(derive_stream(o.seed, kShotTag, set, 0), length, r, 0));
  return dynamics::sampled_probability(exact, o.shots, rng);
}

RbRecord empty_record(const std::string& label, const std::string& mode, int n,
                      const RbOptions& o) {
  if (o.lengths.empty() || o.randomizations < 1)
    throw ValidationError("RB needs lengths and at least one randomization");
  for (int m : o.lengths)
    if (m < 1) throw ValidationError("RB lengths must be >= 1");
  RbRecord rec;
  rec.label = label;
  rec.mode = mode;
  rec.n_qubits = n;
  rec.lengths = o.lengths;
  rec.randomizations = o.randomizations;
  rec.seed = o.seed;
  rec.survival.assign(o.lengths.size(), std::vector<double>(o.randomizations, 0.0));
  return rec;
}

}  // namespace

std::vector<int> default_lengths(int n) {
  if (n == 1) return {1, 10, 25, 50, 75, 100, 150, 200};
  if (n == 2) return {1, 2, 4, 8, 16, 32, 64};
  throw ValidationError("RB supports one or two qubits per set");
}

void RbRecord::summarize() {
  mean.clear();
  stderr_.clear();
  for (const auto& row : survival) {
    const double n = static_cast<double>(row.size());
    double s = 0.0;
    for (double v : row) s += v;
    const double mu = s / n;
    double var = 0.0;
    for (double v : row) var += (v - mu) * (v - mu);
    mean.push_back(mu);
    stderr_.push_back(row.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0);
  }
}

DecayFit RbRecord::fit() const {
  return fit_rb_decay(lengths, mean, 1 << n_qubits);
}

std::vector<int> random_sequence(const CliffordGroup& group, int length, std::uint64_t seed,
                                 int set_index, int randomization) {
  CounterRng rng(derive_stream(seed, static_cast<std::uint64_t>(set_index),
                               static_cast<std::uint64_t>(length),
                               static_cast<std::uint64_t>(randomization)));
  std::vector<int> seq(length);
  for (int& s : seq) s = group.random(rng);
  return seq;
}

std::vector<int> with_inverse(const CliffordGroup& group, std::vector<int> sequence) {
  const int inv = inverse_clifford(group, sequence);
  sequence.push_back(inv);
  return sequence;
}

std::vector<double> aligned_starts(const std::vector<std::vector<double>>& durations) {
  if (durations.empty()) return {};
  const std::size_t n = durations.front().size();
  std::vector<double> starts(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double longest = 0.0;
    for (const auto& d : durations) {
      if (d.size() != n) throw ValidationError("aligned sets need equal sequence lengths");
      longest = std::max(longest, d[k]);
    }
    starts[k + 1] = starts[k] + longest;
  }
  starts.pop_back();
  return starts;
}

SetSimulator::SetSimulator(dynamics::HamiltonianModel model, dynamics::NoiseChannels noise,
                           GateSet gates, dynamics::IntegratorOptions options)
    : gates_(std::move(gates)), sim_(std::move(model), options, std::move(noise)) {
  for (int q = 0; q < gates_.n_qubits(); ++q)
    if (gates_.spec().transmons[q] != q)
      throw ValidationError("set models list the gate-set qubits first, in Clifford order");
}

const CliffordGroup& SetSimulator::group() const {
  return CliffordGroup::of_width(gates_.n_qubits());
}

double SetSimulator::clifford_duration(int element) const {
  return gates_.duration(group().gates(element));
}

double SetSimulator::survival(const std::vector<int>& elements,
                              const std::vector<double>& starts) const {
  const auto& model = sim_.model();
  const int d = model.dim();
  if (starts.size() != elements.size()) throw ValidationError("one start time per Clifford");
  dynamics::ControlSequence seq;
  for (std::size_t k = 0; k < elements.size(); ++k)
    gates_.schedule(group().gates(elements[k]), starts[k], seq);
  const auto events = ordered_events(seq);

  const bool noisy = sim_.noisy();
  Vector state = Vector::Zero(noisy ? d * d : d);
  state(0) = 1.0;
  double t = 0.0;
  auto idle_to = [&](double target) {
    if (target <= t + 1e-9) return;
    state = noisy ? Vector(sim_.idle_superoperator(target - t, t) * state)
                  : Vector(sim_.idle_unitary(target - t, t) * state);
    t = target;
  };
  for (const Event& e : events) {
    idle_to(e.time);
    if (e.is_pulse) {
      const auto& p = seq.pulses[e.index];
      state = noisy ? Vector(sim_.superoperator(p.pulse, p.start_ns) * state)
                    : Vector(sim_.unitary(p.pulse, p.start_ns) * state);
      t = p.end_ns();
    } else {
      const auto& vz = seq.virtual_z[e.index];
      const Vector z = dynamics::virtual_z_diagonal(model, vz.transmon, vz.angle_rad);
      if (noisy) {
        for (int j = 0; j < d; ++j)
          for (int i = 0; i < d; ++i) state(i + d * j) *= z(i) * std::conj(z(j));
      } else {
        state = state.cwiseProduct(z);
      }
    }
  }
  const Matrix s = model.dressed_basis();
  Matrix rho = noisy ? Matrix(Eigen::Map<const Matrix>(state.data(), d, d))
                     : Matrix(state * state.adjoint());
  rho = s.adjoint() * rho * s;
  const auto probs =
      dynamics::outcome_probabilities(rho, model.levels(), model.n_transmons());
  // Ground readout of the gate-set qubits, any state of spectators.
  const int spectators = model.n_transmons() - gates_.n_qubits();
  double p0 = 0.0;
  for (int b = 0; b < (1 << spectators); ++b) p0 += probs[b];
  return std::clamp(p0, 0.0, 1.0);
}

RbRecord run_rb(const SetSimulator& target, const RbOptions& o,
                const std::vector<const GateSet*>& partners, int self) {
  const bool aligned = !partners.empty();
  RbRecord rec = empty_record(target.gates().spec().label, "individual",
                              target.gates().n_qubits(), o);
  std::vector<const GateSet*> sets = partners;
  if (!aligned) sets = {&target.gates()};
  if (self < 0 || self >= static_cast<int>(sets.size()))
    throw ValidationError("target position is outside the set list");
  const std::size_t jobs = o.lengths.size() * static_cast<std::size_t>(o.randomizations);
  parallel_for(jobs, o.threads, [&](std::size_t job) {
    const std::size_t li = job / o.randomizations;
    const int r = static_cast<int>(job % o.randomizations);
    const int m = o.lengths[li];
    std::vector<std::vector<double>> durations;
    std::vector<int> own;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto& g = CliffordGroup::of_width(sets[s]->n_qubits());
      const auto seq = with_inverse(g, random_sequence(g, m, o.seed, static_cast<int>(s), r));
      std::vector<double> d;
      for (int e : seq) d.push_back(sets[s]->duration(g.gates(e)));
      durations.push_back(std::move(d));
      if (static_cast<int>(s) == self) own = seq;
    }
    const double exact = target.survival(own, aligned_starts(durations));
    rec.survival[li][r] = measured(exact, o, self, m, r);
  });
  rec.summarize();
  return rec;
}

RbRecord run_depolarizing_rb(int n, double infidelity, const RbOptions& o) {
  const int d = 1 << n;
  if (!(infidelity >= 0.0) || infidelity > (d - 1.0) / d)
    throw ValidationError("depolarizing infidelity must lie in [0, (d-1)/d]");
  const double lambda = infidelity * d / (d - 1.0);
  const auto& group = CliffordGroup::of_width(n);
  RbRecord rec = empty_record(fmt::format("depolarizing-{}q", n), "depolarizing", n, o);
  const std::size_t jobs = o.lengths.size() * static_cast<std::size_t>(o.randomizations);
  parallel_for(jobs, o.threads, [&](std::size_t job) {
    const std::size_t li = job / o.randomizations;
    const int r = static_cast<int>(job % o.randomizations);
    const int m = o.lengths[li];
    const auto seq = with_inverse(group, random_sequence(group, m, o.seed, 0, r));
    Matrix rho = Matrix::Zero(d, d);
    rho(0, 0) = 1.0;
    for (int e : seq) {
      const Matrix u = gate_list_unitary(group.gates(e), n);
      rho = u * rho * u.adjoint();
      rho = (1.0 - lambda) * rho + lambda * Matrix::Identity(d, d) / static_cast<double>(d);
    }
    rec.survival[li][r] = measured(std::clamp(rho(0, 0).real(), 0.0, 1.0), o, 0, m, r);
  });
  rec.summarize();
  return rec;
}

}  // namespace qlattice::benchmarking
