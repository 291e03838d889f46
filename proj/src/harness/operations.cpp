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

#include "qlattice/harness/operations.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "qlattice/benchmarking/gate_set.hpp"
#include "qlattice/calibration/cross_resonance.hpp"
#include "qlattice/common/errors.hpp"
#include "qlattice/common/parallel.hpp"
#include "qlattice/common/rng.hpp"

namespace qlattice::harness {

namespace {

constexpr std::uint64_t kQubitCalibrationTag = 0xCA1;
constexpr std::uint64_t kEdgeCalibrationTag = 0xCA2;

std::vector<int> first_indices(std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
  return out;
}

}  // namespace

double area_estimate_x90(const calibration::SingleQubitParams& params) {
  calibration::SingleQubitParams unit = params;
  unit.amp_x90_MHz = 1.0;
  unit.drag = 0.0;
  const auto pulse = calibration::single_qubit_pulse(unit, 0, calibration::SingleQubitGate::kX90);
  return 0.25e3 / pulse.area_MHz_ns();
}

std::vector<calibration::CalibrationResult> calibrate_device(
    const DeviceConfig& device, calibration::CalibrationStore& store,
    const std::vector<std::string>& qubits, const std::vector<std::string>& edges,
    const calibration::CalibrationOptions& options, unsigned threads) {
  for (const auto& q : qubits) device.qubit_index(q);
  for (const auto& e : edges) device.edge(e);

  std::vector<std::vector<calibration::CalibrationResult>> qubit_results(qubits.size());
  parallel_for(qubits.size(), threads, [&](std::size_t i) {
    const std::string& name = qubits[i];
    if (!store.has_qubit(name)) {
      calibration::SingleQubitParams p;
      p.amp_x90_MHz = area_estimate_x90(p);
      store.set_initial_qubit(name, p);
    }
    calibration::CalibrationOptions o = options;
    o.seed = derive_stream(options.seed, kQubitCalibrationTag, i, 0);
    dynamics::PulseSimulator sim(device.model({name}));
    calibration::QubitCalibrator cal(sim, 0, name, o);
    auto& out = qubit_results[i];
    out.push_back(cal.calibrate_pi2(store));
    out.push_back(cal.calibrate_pi(store));
    out.push_back(cal.calibrate_drag(store));
  });

  std::vector<std::vector<calibration::CalibrationResult>> edge_results(edges.size());
  parallel_for(edges.size(), threads, [&](std::size_t i) {
    const auto& e = device.edge(edges[i]);
    dynamics::PulseSimulator sim(device.model({e.control, e.target}));
    calibration::CalibrationOptions o = options;
    o.seed = derive_stream(options.seed, kEdgeCalibrationTag, i, 0);
    calibration::CrossResonanceCalibrator cal(sim, e.name, e.control, e.target, o);
    if (!store.has_edge(e.name)) {
      calibration::CrossResonanceParams cr;
      cr.control = e.control;
      cr.target = e.target;
      for (const auto& q : {e.control, e.target})
        if (!store.has_qubit(q) || !store.qubit(q).drag_done)
          throw OrderingError(
              fmt::format("{} needs single-qubit calibration of {} first", e.name, q));
      cr.amplitude_MHz = cal.rough_amplitude(cr, store.qubit(e.control));
      store.set_initial_edge(e.name, cr);
    }
    auto& out = edge_results[i];
    out.push_back(cal.calibrate_amplitude(store));
    out.push_back(cal.calibrate_phase(store));
  });

  std::vector<calibration::CalibrationResult> all;
  for (auto& v : qubit_results) all.insert(all.end(), v.begin(), v.end());
  for (auto& v : edge_results) all.insert(all.end(), v.begin(), v.end());
  return all;
}

calibration::CoherenceFit measure_coherence(const DeviceConfig& device,
                                            const calibration::CalibrationStore& store,
                                            const std::string& qubit, std::uint64_t shots,
                                            std::uint64_t seed, int points) {
  const auto& q = device.qubit(qubit);
  const auto params = store.qubit(qubit);
  dynamics::PulseSimulator sim(device.model({qubit}), {}, device.noise({qubit}));
  const double t1_span = q.t1_us > 0.0 ? 5.0 * q.t1_us : 100.0;
  const double t2_span = q.t2echo_us > 0.0 ? 5.0 * q.t2echo_us : 100.0;
  calibration::CoherenceFit fit;
  fit.t1 = calibration::measure_t1(sim, 0, params, calibration::linear_delays_us(t1_span, points),
                                   shots, derive_stream(seed, 1, 0, 0));
  fit.t2echo = calibration::measure_t2echo(sim, 0, params,
                                           calibration::linear_delays_us(t2_span, points), shots,
                                           derive_stream(seed, 2, 0, 0));
  return fit;
}

benchmarking::SetSimulator make_set_simulator(const DeviceConfig& device,
                                              const calibration::CalibrationStore& store,
                                              const std::string& label, bool noisy) {
  const auto names = device.target_qubits(label);
  auto spec = benchmarking::gate_set_from_store(store, label, first_indices(names.size()));
  const auto model = device.model(names);
  auto noise = noisy ? device.noise(names)
                     : dynamics::NoiseChannels::none(static_cast<int>(names.size()));
  return benchmarking::SetSimulator(model, noise, benchmarking::GateSet(std::move(spec)));
}

benchmarking::RbRecord run_target_rb(const DeviceConfig& device,
                                     const calibration::CalibrationStore& store,
                                     const std::string& label,
                                     const benchmarking::RbOptions& options, bool noisy) {
  const auto sim = make_set_simulator(device, store, label, noisy);
  benchmarking::RbOptions o = options;
  if (o.lengths.empty()) o.lengths = benchmarking::default_lengths(sim.gates().n_qubits());
  return benchmarking::run_rb(sim, o);
}

benchmarking::CrosstalkOptions resolve_crosstalk(const benchmarking::SetSimulator& first,
                                                 const benchmarking::SetSimulator& second,
                                                 const NamedCrosstalk& x) {
  auto position = [](const benchmarking::SetSimulator& s, const std::string& name) {
    const auto& names = s.gates().spec().names;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  };
  benchmarking::CrosstalkOptions out;
  out.leakage_first_to_second = x.leakage_first_to_second;
  out.leakage_second_to_first = x.leakage_second_to_first;
  out.trajectories = x.trajectories;
  for (const auto& c : x.couplings) {
    int a = position(first, c.qubit_a), b = position(second, c.qubit_b);
    if (a < 0 || b < 0) {
      a = position(first, c.qubit_b);
      b = position(second, c.qubit_a);
    }
    if (a < 0 || b < 0)
      throw ValidationError(fmt::format("coupling {}-{} does not join the two sets",
                                        c.qubit_a, c.qubit_b));
    out.couplings.push_back({a, b, c.zz_MHz});
  }
  return out;
}

benchmarking::SimultaneousResult run_simultaneous_rb(
    const DeviceConfig& device, const calibration::CalibrationStore& store,
    const std::string& first, const std::string& second,
    const benchmarking::RbOptions& options, bool noisy, const NamedCrosstalk& crosstalk) {
  const auto a = make_set_simulator(device, store, first, noisy);
  const auto b = make_set_simulator(device, store, second, noisy);
  if (a.gates().n_qubits() != b.gates().n_qubits() && options.lengths.empty())
    throw ValidationError("sets of different width need an explicit length list");
  benchmarking::RbOptions o = options;
  if (o.lengths.empty()) o.lengths = benchmarking::default_lengths(a.gates().n_qubits());
  return benchmarking::simultaneous_rb({&a, &b}, o, resolve_crosstalk(a, b, crosstalk));
}

}  // namespace qlattice::harness
