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

#include "qlattice/benchmarking/clifford_group.hpp"

#include <fmt/format.h>

#include "qlattice/common/errors.hpp"
#include "qlattice/dynamics/gates.hpp"

namespace qlattice::benchmarking {

namespace {

using dynamics::Matrix;
using P = Primitive;

// Single-qubit decompositions, first pulse applied first.
const std::vector<std::vector<Primitive>>& single_qubit_table() {
  static const std::vector<std::vector<Primitive>> table = {
      // Paulis
      {P::kIdle},
      {P::kX180},
      {P::kY180},
      {P::kY180, P::kX180},
      // 2 pi / 3 rotations
      {P::kX90, P::kY90},
      {P::kX90, P::kYm90},
      {P::kXm90, P::kY90},
      {P::kXm90, P::kYm90},
      {P::kY90, P::kX90},
      {P::kY90, P::kXm90},
      {P::kYm90, P::kX90},
      {P::kYm90, P::kXm90},
      // pi / 2 rotations
      {P::kX90},
      {P::kXm90},
      {P::kY90},
      {P::kYm90},
      {P::kXm90, P::kY90, P::kX90},
      {P::kXm90, P::kYm90, P::kX90},
      // Hadamard-like
      {P::kX180, P::kY90},
      {P::kX180, P::kYm90},
      {P::kY180, P::kX90},
      {P::kY180, P::kXm90},
      {P::kX90, P::kY90, P::kX90},
      {P::kXm90, P::kY90, P::kXm90},
  };
  return table;
}

Matrix primitive_unitary(Primitive p) {
  switch (p) {
    case P::kIdle: return dynamics::ideal_gate_unitary("I");
    case P::kX90: return dynamics::ideal_gate_unitary("X90");
    case P::kXm90: return dynamics::ideal_gate_unitary("X-90");
    case P::kY90: return dynamics::ideal_gate_unitary("Y90");
    case P::kYm90: return dynamics::ideal_gate_unitary("Y-90");
    case P::kX180: return dynamics::ideal_gate_unitary("X180");
    case P::kY180: return dynamics::ideal_gate_unitary("Y180");
    case P::kZX90: return dynamics::ideal_gate_unitary("ZX90");
  }
  return Matrix();
}

}  // namespace

std::string_view to_string(Primitive p) {
  switch (p) {
    case P::kIdle: return "I";
    case P::kX90: return "X90";
    case P::kXm90: return "X-90";
    case P::kY90: return "Y90";
    case P::kYm90: return "Y-90";
    case P::kX180: return "X180";
    case P::kY180: return "Y180";
    case P::kZX90: return "ZX90";
  }
  return "?";
}

Matrix gate_list_unitary(const std::vector<GateOp>& gates, int n) {
  Matrix u = Matrix::Identity(1 << n, 1 << n);
  for (const GateOp& g : gates) {
    if (g.gate == P::kZX90) {
      if (n != 2) throw ValidationError("ZX90 needs two qubits");
      u = primitive_unitary(g.gate) * u;
    } else {
      u = dynamics::embed_single_qubit(primitive_unitary(g.gate), n, g.qubit) * u;
    }
  }
  return u;
}

CliffordGroup::CliffordGroup(int n) : n_(n) {
  const auto& table = single_qubit_table();
  std::vector<Tableau> one;
  for (const auto& seq : table) {
    std::vector<GateOp> ops;
    for (auto p : seq) ops.push_back({p, 0});
    one.push_back(Tableau::from_unitary(gate_list_unitary(ops, 1), 1));
  }
  if (n == 1) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::vector<GateOp> ops;
      for (auto p : table[i]) ops.push_back({p, 0});
      add(one[i], ops);
    }
    if (size() != 24) throw ValidationError("single-qubit Clifford table is not a group");
    return;
  }
  if (n != 2) throw ValidationError("Clifford groups are provided for 1 and 2 qubits");

  // Local layers c0 (x) c1, idle slots dropped.
  std::vector<Tableau> layers;
  std::vector<std::vector<GateOp>> layer_gates;
  for (std::size_t a = 0; a < table.size(); ++a)
    for (std::size_t b = 0; b < table.size(); ++b) {
      std::vector<GateOp> ops;
      for (auto p : table[a])
        if (p != P::kIdle) ops.push_back({p, 0});
      for (auto p : table[b])
        if (p != P::kIdle) ops.push_back({p, 1});
      layers.push_back(Tableau::from_unitary(gate_list_unitary(ops, 2), 2));
      layer_gates.push_back(std::move(ops));
    }
  for (std::size_t i = 0; i < layers.size(); ++i) add(layers[i], layer_gates[i]);
  const Tableau zx = Tableau::from_unitary(primitive_unitary(P::kZX90), 2);
  std::size_t begin = 0;
  while (begin < tableaux_.size()) {
    const std::size_t end = tableaux_.size();
    for (std::size_t e = begin; e < end; ++e) {
      const Tableau base = tableaux_[e].then(zx);
      for (std::size_t l = 0; l < layers.size(); ++l) {
        const Tableau t = base.then(layers[l]);
        if (index_.count(t.key())) continue;
        std::vector<GateOp> ops = gates_[e];
        ops.push_back({P::kZX90, 0});
        ops.insert(ops.end(), layer_gates[l].begin(), layer_gates[l].end());
        add(t, std::move(ops));
      }
    }
    begin = end;
  }
  if (size() != 11520) throw ValidationError("two-qubit Clifford closure has the wrong order");
}

void CliffordGroup::add(const Tableau& t, std::vector<GateOp> gates) {
  if (!index_.emplace(t.key(), size()).second) return;
  tableaux_.push_back(t);
  gates_.push_back(std::move(gates));
}

const CliffordGroup& CliffordGroup::single_qubit() {
  static const CliffordGroup group(1);
  return group;
}

const CliffordGroup& CliffordGroup::two_qubit() {
  static const CliffordGroup group(2);
  return group;
}

const CliffordGroup& CliffordGroup::of_width(int n) {
  if (n == 1) return single_qubit();
  if (n == 2) return two_qubit();
  throw ValidationError(fmt::format("unsupported Clifford width {}", n));
}

int CliffordGroup::cr_count(int i) const {
  int k = 0;
  for (const auto& g : gates(i)) k += g.gate == P::kZX90;
  return k;
}

int CliffordGroup::index_of(const Tableau& t) const {
  const auto it = index_.find(t.key());
  return it == index_.end() ? -1 : it->second;
}

int CliffordGroup::compose(int a, int b) const {
  return index_of(tableau(a).then(tableau(b)));
}

int CliffordGroup::inverse(int i) const { return index_of(tableau(i).inverse()); }

int CliffordGroup::random(CounterRng& rng) const {
  return static_cast<int>(rng.below(static_cast<std::uint64_t>(size())));
}

std::vector<int> CliffordGroup::class_sizes() const {
  std::vector<int> out(4, 0);
  for (int i = 0; i < size(); ++i) ++out.at(cr_count(i));
  return out;
}

int inverse_clifford(const CliffordGroup& group, const std::vector<int>& sequence) {
  Tableau total = Tableau::identity(group.n_qubits());
  for (int s : sequence) total = total.then(group.tableau(s));
  return group.index_of(total.inverse());
}

}  // namespace qlattice::benchmarking
