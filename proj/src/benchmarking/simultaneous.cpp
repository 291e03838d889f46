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

#include "qlattice/benchmarking/simultaneous.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/parallel.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/dynamics/measurement.hpp"

namespace qlattice::benchmarking {

namespace {

using dynamics::Complex;
using dynamics::Matrix;
using dynamics::Vector;

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr std::uint64_t kTrajectoryTag = 0x7A3;
constexpr std::uint64_t kSimultaneousShotTag = 0x5108;

// One slice of a set's timeline: a propagator over [t0, t1] or an
// instantaneous diagonal frame update (t0 == t1).
struct Step {
  double t0 = 0.0, t1 = 0.0;
  bool diagonal = false;
  Matrix u;
  Vector z;
};

void validate_sets(const std::vector<const SetSimulator*>& sets, const CrosstalkOptions& x) {
  if (sets.size() != 2) throw ValidationError("simultaneous RB runs exactly two sets");
  std::set<std::string> names;
  for (const auto* s : sets) {
    if (!s) throw ValidationError("null gate set");
    for (const auto& n : s->gates().spec().names)
      if (!names.insert(n).second)
        throw ValidationError(fmt::format("qubit {} belongs to both simultaneous sets", n));
  }
  for (const auto& c : x.couplings) {
    if (c.qubit_a < 0 || c.qubit_a >= sets[0]->gates().n_qubits() || c.qubit_b < 0 ||
        c.qubit_b >= sets[1]->gates().n_qubits())
      throw ValidationError("cross coupling addresses a qubit outside its set");
  }
  if (x.leakage_first_to_second < 0.0 || x.leakage_second_to_first < 0.0 ||
      x.trajectories < 1 || !(x.chunk_ns > 0.0))
    throw ValidationError("invalid crosstalk options");
}

// Copy of `p` (played by `from`) as seen on transmon `to` of simulator `into`.
dynamics::PulseEnvelope leaked_copy(const dynamics::PulseEnvelope& p,
                                    const dynamics::PulseSimulator& from,
                                    const dynamics::PulseSimulator& into, int to,
                                    double fraction) {
  dynamics::PulseEnvelope q = p;
  q.amplitude_MHz = p.amplitude_MHz * fraction;
  q.channel = to;
  q.frame_transmon = to;
  q.ssb_detuning_MHz = (from.carrier_GHz(p) - into.model().dressed_f01(to)) * 1e3;
  return q;
}

dynamics::ControlSequence schedule_set(const SetSimulator& set, const std::vector<int>& seq,
                                       const std::vector<double>& starts) {
  dynamics::ControlSequence out;
  for (std::size_t k = 0; k < seq.size(); ++k)
    set.gates().schedule(set.group().gates(seq[k]), starts[k], out);
  return out;
}

std::vector<Step> build_steps(const SetSimulator& set, const dynamics::ControlSequence& seq,
                              const std::vector<dynamics::ScheduledPulse>& leaks,
                              double t_end, double chunk) {
  const auto& sim = set.simulator();
  struct Ev {
    double time;
    bool pulse;
    std::size_t i;
  };
  std::vector<Ev> ev;
  for (std::size_t i = 0; i < seq.virtual_z.size(); ++i) ev.push_back({seq.virtual_z[i].time_ns, false, i});
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) ev.push_back({seq.pulses[i].start_ns, true, i});
  std::stable_sort(ev.begin(), ev.end(), [](const Ev& a, const Ev& b) {
    if (a.time != b.time) return a.time < b.time;
    return !a.pulse && b.pulse;
  });

  std::vector<Step> steps;
  double t = 0.0;
  auto idle_to = [&](double target) {
    while (target > t + 1e-9) {
      const double span = std::min(chunk, target - t);
      steps.push_back({t, t + span, false, sim.idle_unitary(span, t), Vector()});
      t += span;
    }
  };
  for (const Ev& e : ev) {
    idle_to(e.time);
    if (e.pulse) {
      const auto& sp = seq.pulses[e.i];
      const auto& chunks = sim.chunk_unitaries(sp.pulse, chunk);
      const Vector q = sim.pulse_frame_shift(sp.pulse, sp.start_ns);
      double a = sp.start_ns;
      for (std::size_t c = 0; c < chunks.size(); ++c) {
        const double b = std::min(sp.end_ns(), sp.start_ns + (c + 1) * chunk);
        steps.push_back({a, b, false, dynamics::conjugate_by_diagonal(chunks[c], q), Vector()});
        a = b;
      }
      t = sp.end_ns();
    } else {
      const auto& vz = seq.virtual_z[e.i];
      steps.push_back({vz.time_ns, vz.time_ns, true, Matrix(),
                       dynamics::virtual_z_diagonal(sim.model(), vz.transmon, vz.angle_rad)});
    }
  }
  idle_to(t_end);

  if (!leaks.empty()) {
    // Slices overlapping leaked drive are integrated directly with every
    // active pulse at absolute time.
    const double dt = sim.options().dt_ns;
    for (Step& s : steps) {
      if (s.diagonal) continue;
      std::vector<dynamics::ScheduledPulse> active;
      for (const auto& l : leaks)
        if (l.start_ns < s.t1 - 1e-9 && l.end_ns() > s.t0 + 1e-9) active.push_back(l);
      if (active.empty()) continue;
      for (const auto& p : seq.pulses)
        if (p.start_ns < s.t1 - 1e-9 && p.end_ns() > s.t0 + 1e-9) active.push_back(p);
      s.u = dynamics::propagate(sim.model(), active, s.t0, s.t1, dt);
    }
  }
  return steps;
}

class JointState {
 public:
  JointState(const SetSimulator& a, const SetSimulator& b, const CrosstalkOptions& x)
      : a_(a), b_(b), da_(a.simulator().model().dim()), db_(b.simulator().model().dim()) {
    const auto& ma = a.simulator().model();
    const auto& mb = b.simulator().model();
    const int d = da_ * db_;
    decay_ = Eigen::VectorXd::Zero(d);
    zz_ = Eigen::VectorXd::Zero(d);
    auto joint_number = [&](int set, int k) {
      Eigen::VectorXd n(d);
      for (int ia = 0; ia < da_; ++ia)
        for (int ib = 0; ib < db_; ++ib)
          n(ia * db_ + ib) = set == 0 ? ma.number_diagonal(k)(ia) : mb.number_diagonal(k)(ib);
      return n;
    };
    for (int set = 0; set < 2; ++set) {
      const auto& sim = (set == 0 ? a : b).simulator();
      for (int k = 0; k < sim.model().n_transmons(); ++k) {
        const Eigen::VectorXd n = joint_number(set, k);
        const double g1 = sim.noise().silent() ? 0.0 : sim.noise().relaxation_rate(k);
        const double gp = sim.noise().silent() ? 0.0 : sim.noise().dephasing_rate(k);
        decay_ += g1 * n + gp * n.cwiseProduct(n);
        if (g1 > 0.0) channels_.push_back({set, k, false, g1, n});
        if (gp > 0.0) channels_.push_back({set, k, true, gp, n});
      }
    }
    for (const auto& c : x.couplings)
      zz_ += (kTwoPi * c.zz_MHz * 1e-3) *
             joint_number(0, c.qubit_a).cwiseProduct(joint_number(1, c.qubit_b));
  }

  void reset() {
    psi_ = Vector::Zero(da_ * db_);
    psi_(0) = 1.0;
  }
  void apply(int set, const Step& s) {
    if (s.diagonal) {
      apply_diagonal(set, s.z);
    } else {
      apply_matrix(set, s.u);
    }
  }
  void apply_matrix(int set, const Matrix& u) {
    Eigen::Map<Matrix> x(psi_.data(), db_, da_);
    if (set == 0) x = (x * u.transpose()).eval();
    else x = (u * x).eval();
  }
  void apply_diagonal(int set, const Vector& z) {
    for (int ia = 0; ia < da_; ++ia)
      for (int ib = 0; ib < db_; ++ib) psi_(ia * db_ + ib) *= set == 0 ? z(ia) : z(ib);
  }
  // No-jump decay and cross ZZ over `dt` ns, followed by a jump if the
  // squared norm has fallen below the waiting-time threshold.
  void advance(double dt, double& threshold, CounterRng& rng) {
    for (Eigen::Index i = 0; i < psi_.size(); ++i)
      psi_(i) *= std::exp(Complex(-0.5 * decay_(i) * dt, -zz_(i) * dt));
    if (psi_.squaredNorm() >= threshold || channels_.empty()) return;
    std::vector<double> weight;
    double total = 0.0;
    for (const auto& c : channels_) {
      double w = 0.0;
      for (Eigen::Index i = 0; i < psi_.size(); ++i) {
        const double n = c.number(i);
        w += std::norm(psi_(i)) * (c.dephasing ? n * n : n);
      }
      weight.push_back(c.rate * w);
      total += c.rate * w;
    }
    if (total > 0.0) {
      double u = rng.uniform() * total;
      std::size_t j = 0;
      while (j + 1 < weight.size() && u > weight[j]) u -= weight[j++];
      const auto& c = channels_[j];
      if (c.dephasing) {
        psi_ = psi_.cwiseProduct(c.number.cast<Complex>());
      } else {
        const auto& sim = (c.set == 0 ? a_ : b_).simulator();
        apply_matrix(c.set, sim.model().lowering(c.transmon));
      }
    }
    psi_ /= psi_.norm();
    threshold = rng.uniform();
  }
  // Ground readout probability of each set, in each set's dressed basis.
  std::vector<double> survivals() {
    apply_matrix(0, a_.simulator().model().dressed_basis().adjoint());
    apply_matrix(1, b_.simulator().model().dressed_basis().adjoint());
    const double norm = psi_.squaredNorm();
    std::vector<double> out(2, 0.0);
    const auto& ma = a_.simulator().model();
    const auto& mb = b_.simulator().model();
    const int qa = a_.gates().n_qubits(), qb = b_.gates().n_qubits();
    for (int ia = 0; ia < da_; ++ia)
      for (int ib = 0; ib < db_; ++ib) {
        const double p = std::norm(psi_(ia * db_ + ib)) / norm;
        bool ga = true, gb = true;
        for (int k = 0; k < qa; ++k) ga = ga && ma.level_of(ia, k) == 0;
        for (int k = 0; k < qb; ++k) gb = gb && mb.level_of(ib, k) == 0;
        if (ga) out[0] += p;
        if (gb) out[1] += p;
      }
    return out;
  }

 private:
  struct Channel {
    int set;
    int transmon;
    bool dephasing;
    double rate;
    Eigen::VectorXd number;
  };
  const SetSimulator& a_;
  const SetSimulator& b_;
  int da_, db_;
  Eigen::VectorXd decay_, zz_;
  std::vector<Channel> channels_;
  Vector psi_;
};

}  // namespace

bool CrosstalkOptions::active() const {
  if ((leakage_first_to_second > 0.0 || leakage_second_to_first > 0.0) && !couplings.empty())
    return true;
  for (const auto& c : couplings)
    if (c.zz_MHz != 0.0) return true;
  return false;
}

std::vector<double> trajectory_survival(const std::vector<const SetSimulator*>& sets,
                                        const std::vector<std::vector<int>>& sequences,
                                        const CrosstalkOptions& x, std::uint64_t stream) {
  validate_sets(sets, x);
  std::vector<std::vector<double>> durations(2);
  for (int s = 0; s < 2; ++s)
    for (int e : sequences.at(s)) durations[s].push_back(sets[s]->clifford_duration(e));
  const auto starts = aligned_starts(durations);
  double t_end = starts.empty() ? 0.0 : starts.back();
  if (!starts.empty())
    t_end += std::max(durations[0].back(), durations[1].back());

  std::vector<dynamics::ControlSequence> seqs;
  for (int s = 0; s < 2; ++s) seqs.push_back(schedule_set(*sets[s], sequences[s], starts));
  std::vector<std::vector<dynamics::ScheduledPulse>> leaks(2);
  for (const auto& c : x.couplings) {
    if (x.leakage_first_to_second > 0.0)
      for (const auto& p : seqs[0].pulses)
        if (p.pulse.channel == c.qubit_a)
          leaks[1].push_back({p.start_ns, leaked_copy(p.pulse, sets[0]->simulator(),
                                                      sets[1]->simulator(), c.qubit_b,
                                                      x.leakage_first_to_second)});
    if (x.leakage_second_to_first > 0.0)
      for (const auto& p : seqs[1].pulses)
        if (p.pulse.channel == c.qubit_b)
          leaks[0].push_back({p.start_ns, leaked_copy(p.pulse, sets[1]->simulator(),
                                                      sets[0]->simulator(), c.qubit_a,
                                                      x.leakage_second_to_first)});
  }
  std::vector<std::vector<Step>> steps;
  for (int s = 0; s < 2; ++s)
    steps.push_back(build_steps(*sets[s], seqs[s], leaks[s], t_end, x.chunk_ns));

  JointState state(*sets[0], *sets[1], x);
  std::vector<double> mean(2, 0.0);
  for (int traj = 0; traj < x.trajectories; ++traj) {
    CounterRng rng(derive_stream(stream, static_cast<std::uint64_t>(traj), 0, 0));
    double threshold = rng.uniform();
    state.reset();
    std::size_t pos[2] = {0, 0};
    double clock[2] = {0.0, 0.0};
    double global = 0.0;
    for (;;) {
      int next = -1;
      for (int s = 0; s < 2; ++s) {
        if (pos[s] >= steps[s].size()) continue;
        if (next < 0 || steps[s][pos[s]].t1 < steps[next][pos[next]].t1) next = s;
      }
      if (next < 0) break;
      const Step& st = steps[next][pos[next]++];
      state.apply(next, st);
      clock[next] = st.t1;
      const double now = std::min(pos[0] < steps[0].size() ? clock[0] : t_end,
                                  pos[1] < steps[1].size() ? clock[1] : t_end);
      if (now > global) {
        state.advance(now - global, threshold, rng);
        global = now;
      }
    }
    if (t_end > global) state.advance(t_end - global, threshold, rng);
    const auto s = state.survivals();
    mean[0] += s[0];
    mean[1] += s[1];
  }
  for (double& m : mean) m /= x.trajectories;
  return mean;
}

std::vector<RbRecord> run_simultaneous(const std::vector<const SetSimulator*>& sets,
                                       const RbOptions& o, const CrosstalkOptions& x) {
  validate_sets(sets, x);
  const std::vector<const GateSet*> partners{&sets[0]->gates(), &sets[1]->gates()};
  std::vector<RbRecord> out;
  if (!x.active()) {
    for (int s = 0; s < 2; ++s) {
      out.push_back(run_rb(*sets[s], o, partners, s));
      out.back().mode = "simultaneous";
    }
    return out;
  }
  for (int s = 0; s < 2; ++s) {
    RbRecord rec;
    rec.label = sets[s]->gates().spec().label;
    rec.mode = "simultaneous";
    rec.n_qubits = sets[s]->gates().n_qubits();
    rec.lengths = o.lengths;
    rec.randomizations = o.randomizations;
    rec.seed = o.seed;
    rec.survival.assign(o.lengths.size(), std::vector<double>(o.randomizations, 0.0));
    out.push_back(std::move(rec));
  }
  if (o.lengths.empty() || o.randomizations < 1)
    throw ValidationError("RB needs lengths and at least one randomization");
  const std::size_t jobs = o.lengths.size() * static_cast<std::size_t>(o.randomizations);
  parallel_for(jobs, o.threads, [&](std::size_t job) {
    const std::size_t li = job / o.randomizations;
    const int r = static_cast<int>(job % o.randomizations);
    const int m = o.lengths[li];
    std::vector<std::vector<int>> seqs;
    for (int s = 0; s < 2; ++s)
      seqs.push_back(with_inverse(sets[s]->group(),
                                  random_sequence(sets[s]->group(), m, o.seed, s, r)));
    const std::uint64_t stream = derive_stream(derive_stream(o.seed, kTrajectoryTag, 0, 0),
                                               static_cast<std::uint64_t>(m),
                                               static_cast<std::uint64_t>(r), 0);
    const auto surv = trajectory_survival(sets, seqs, x, stream);
    for (int s = 0; s < 2; ++s) {
      double v = surv[s];
      if (o.shots > 0) {
        CounterRng rng(derive_stream(derive_stream(o.seed, kSimultaneousShotTag, s, 0), m, r, 0));
        v = dynamics::sampled_probability(v, o.shots, rng);
      }
      out[s].survival[li][r] = v;
    }
  });
  for (auto& rec : out) rec.summarize();
  return out;
}

SimultaneousResult simultaneous_rb(const std::vector<const SetSimulator*>& sets,
                                   const RbOptions& o, const CrosstalkOptions& x) {
  validate_sets(sets, x);
  const std::vector<const GateSet*> partners{&sets[0]->gates(), &sets[1]->gates()};
  SimultaneousResult res;
  for (int s = 0; s < 2; ++s) res.individual.push_back(run_rb(*sets[s], o, partners, s));
  res.simultaneous = run_simultaneous(sets, o, x);
  for (int s = 0; s < 2; ++s) {
    res.individual_fit.push_back(res.individual[s].fit());
    res.simultaneous_fit.push_back(res.simultaneous[s].fit());
    res.addressability.push_back(res.individual_fit[s].p - res.simultaneous_fit[s].p);
  }
  return res;
}

}  // namespace qlattice::benchmarking
