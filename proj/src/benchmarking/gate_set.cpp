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

#include "qlattice/benchmarking/gate_set.hpp"

#include <fmt/format.h>

#include "qlattice/common/errors.hpp"

namespace qlattice::benchmarking {

namespace {

calibration::SingleQubitGate to_single(Primitive p) {
  using G = calibration::SingleQubitGate;
  switch (p) {
    case Primitive::kX90: return G::kX90;
    case Primitive::kXm90: return G::kXm90;
    case Primitive::kY90: return G::kY90;
    case Primitive::kYm90: return G::kYm90;
    case Primitive::kX180: return G::kX180;
    case Primitive::kY180: return G::kY180;
    default: throw ValidationError("not a single-qubit pulse");
  }
}

}  // namespace

GateSetSpec gate_set_from_store(const calibration::CalibrationStore& store,
                                const std::string& label, const std::vector<int>& transmons) {
  GateSetSpec spec;
  spec.label = label;
  spec.transmons = transmons;
  if (store.has_edge(label)) {
    const auto cr = store.edge(label);
    if (!cr.amplitude_done || !cr.phase_done)
      throw OrderingError(fmt::format("{}: CR gate is not calibrated", label));
    spec.cr = cr;
    for (const auto& q : {cr.control, cr.target}) {
      spec.qubits.push_back(store.qubit(q));
      spec.names.push_back(q);
    }
  } else {
    spec.qubits.push_back(store.qubit(label));
    spec.names.push_back(label);
  }
  for (const auto& q : spec.qubits)
    if (!q.pi2_done || !q.pi_done || !q.drag_done)
      throw OrderingError(fmt::format("{}: single-qubit gates are not calibrated", label));
  if (spec.qubits.size() != transmons.size())
    throw ValidationError(fmt::format("{}: transmon list does not match the gate set", label));
  return spec;
}

GateSet::GateSet(GateSetSpec spec) : spec_(std::move(spec)) {
  const auto n = spec_.transmons.size();
  if (n < 1 || n > 2 || spec_.qubits.size() != n)
    throw ValidationError("gate sets cover one qubit or one CR pair");
  if (n == 2 && !spec_.cr) throw ValidationError("two-qubit gate set needs CR parameters");
}

double GateSet::op_duration(const GateOp& op) const {
  if (op.gate == Primitive::kZX90)
    return calibration::echoed_cr_duration(*spec_.cr, spec_.qubits[0]);
  return spec_.qubits.at(op.qubit).duration_ns;
}

double GateSet::duration(const std::vector<GateOp>& ops) const {
  double t = 0.0;
  for (const auto& op : ops) t += op_duration(op);
  return t;
}

double GateSet::schedule(const std::vector<GateOp>& ops, double t0,
                         dynamics::ControlSequence& out) const {
  return schedule_mapped(ops, t0, {}, out);
}

double GateSet::schedule_mapped(const std::vector<GateOp>& ops, double t0,
                                const std::vector<int>& index_map,
                                dynamics::ControlSequence& out) const {
  auto map = [&](int model_index) {
    return index_map.empty() ? model_index : index_map.at(model_index);
  };
  double t = t0;
  for (const auto& op : ops) {
    if (op.gate == Primitive::kZX90) {
      const auto seg = calibration::build_echoed_cr(*spec_.cr, spec_.qubits[0],
                                                    map(spec_.transmons[0]),
                                                    map(spec_.transmons[1]), t);
      out.pulses.insert(out.pulses.end(), seg.pulses.begin(), seg.pulses.end());
      out.virtual_z.insert(out.virtual_z.end(), seg.virtual_z.begin(), seg.virtual_z.end());
    } else if (op.gate != Primitive::kIdle) {
      out.add(t, calibration::single_qubit_pulse(spec_.qubits.at(op.qubit),
                                                 map(spec_.transmons.at(op.qubit)),
                                                 to_single(op.gate)));
    }
    t += op_duration(op);
  }
  return t;
}

}  // namespace qlattice::benchmarking
