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

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qlattice/benchmarking/tableau.hpp"
#include "qlattice/common/rng.hpp"

namespace qlattice::benchmarking {

/// Physical primitives.  kIdle is an undriven slot one pulse long; kZX90 is
/// the echoed cross-resonance gate with qubit 0 as control.
enum class Primitive : std::uint8_t { kIdle, kX90, kXm90, kY90, kYm90, kX180, kY180, kZX90 };

std::string_view to_string(Primitive p);

struct GateOp {
  Primitive gate = Primitive::kIdle;
  int qubit = 0;  ///< ignored for kZX90
  bool operator==(const GateOp& o) const { return gate == o.gate && qubit == o.qubit; }
};

/// Ideal 2^n unitary of a gate list (first op applied first).
dynamics::Matrix gate_list_unitary(const std::vector<GateOp>& gates, int n_qubits);

/// The 1- or 2-qubit Clifford group with a fixed decomposition of every
/// element into primitives.
///
/// One qubit: the standard 24-element table over {I, X/Y +-90, X/Y 180}
/// averaging 1.875 primitives per element (the identity is one idle slot).
/// Two qubits: breadth-first closure of local layers and ZX90, so every
/// element uses the minimal number of ZX90 gates (classes of 576, 5184,
/// 5184 and 576 elements with 0..3 ZX90; mean 1.5).  Idle slots are dropped
/// from local layers.
class CliffordGroup {
 public:
  static const CliffordGroup& single_qubit();
  static const CliffordGroup& two_qubit();
  static const CliffordGroup& of_width(int n_qubits);

  int n_qubits() const { return n_; }
  int size() const { return static_cast<int>(tableaux_.size()); }
  int identity() const { return 0; }
  const Tableau& tableau(int i) const { return tableaux_.at(i); }
  const std::vector<GateOp>& gates(int i) const { return gates_.at(i); }
  int cr_count(int i) const;
  /// Index of an element, or -1 when the tableau is not in the table.
  int index_of(const Tableau& t) const;
  /// Element equal to applying a then b.
  int compose(int a, int b) const;
  int inverse(int i) const;
  int random(CounterRng& rng) const;
  /// Number of elements using k ZX90 gates, k = 0..3.
  std::vector<int> class_sizes() const;

 private:
  explicit CliffordGroup(int n_qubits);
  void add(const Tableau& t, std::vector<GateOp> gates);

  int n_;
  std::vector<Tableau> tableaux_;
  std::vector<std::vector<GateOp>> gates_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Group element that undoes the whole sequence (applied in order).
int inverse_clifford(const CliffordGroup& group, const std::vector<int>& sequence);

}  // namespace qlattice::benchmarking
