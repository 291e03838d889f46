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

#include "qlattice/calibration/store.hpp"

#include <fmt/format.h>

#include "qlattice/common/errors.hpp"

namespace qlattice::calibration {

CalibrationStore::CalibrationStore(const CalibrationStore& other) {
  std::lock_guard<std::mutex> lock(other.mutex_);
  qubits_ = other.qubits_;
  edges_ = other.edges_;
  history_ = other.history_;
}

CalibrationStore& CalibrationStore::operator=(const CalibrationStore& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  qubits_ = other.qubits_;
  edges_ = other.edges_;
  history_ = other.history_;
  return *this;
}

void CalibrationStore::set_initial_qubit(const std::string& qubit,
                                         const SingleQubitParams& params) {
  std::lock_guard<std::mutex> lock(mutex_);
  qubits_[qubit] = params;
}

void CalibrationStore::set_initial_edge(const std::string& edge,
                                        const CrossResonanceParams& params) {
  std::lock_guard<std::mutex> lock(mutex_);
  edges_[edge] = params;
}

SingleQubitParams CalibrationStore::qubit(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = qubits_.find(name);
  if (it == qubits_.end())
    throw ValidationError(fmt::format("no calibration entry for qubit '{}'", name));
  return it->second;
}

CrossResonanceParams CalibrationStore::edge(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = edges_.find(name);
  if (it == edges_.end())
    throw ValidationError(fmt::format("no calibration entry for edge '{}'", name));
  return it->second;
}

bool CalibrationStore::has_qubit(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return qubits_.count(name) > 0;
}

bool CalibrationStore::has_edge(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return edges_.count(name) > 0;
}

void CalibrationStore::check_locked(const std::string& target,
                                    const std::string& stage) const {
  auto fail = [&](const std::string& missing) {
    throw OrderingError(fmt::format("'{}' on {} requires {} first", stage, target, missing));
  };
  if (stage == "pi2_amplitude" || stage == "pi_amplitude" || stage == "drag") {
    auto it = qubits_.find(target);
    if (it == qubits_.end()) fail("an initial entry");
    const auto& q = it->second;
    if (stage == "pi_amplitude" && !q.pi2_done) fail("pi2_amplitude");
    if (stage == "drag" && !(q.pi2_done && q.pi_done)) fail("pi2_amplitude and pi_amplitude");
    return;
  }
  if (stage == "cr_amplitude" || stage == "cr_phase") {
    auto it = edges_.find(target);
    if (it == edges_.end()) fail("an initial entry");
    const auto& e = it->second;
    for (const auto& q : {e.control, e.target}) {
      auto qi = qubits_.find(q);
      if (qi == qubits_.end() || !qi->second.drag_done)
        fail(fmt::format("single-qubit calibration of {}", q));
    }
    if (stage == "cr_phase" && !e.amplitude_done) fail("cr_amplitude");
    return;
  }
  throw ValidationError(fmt::format("unknown calibration stage '{}'", stage));
}

void CalibrationStore::require_ready_for(const std::string& target,
                                         const std::string& stage) const {
  std::lock_guard<std::mutex> lock(mutex_);
  check_locked(target, stage);
}

void CalibrationStore::commit_pi2(const std::string& qubit, double amplitude,
                                  const CalibrationResult& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  check_locked(qubit, "pi2_amplitude");
  auto& q = qubits_[qubit];
  q.amp_x90_MHz = amplitude;
  q.pi2_done = true;
  q.pi_done = q.drag_done = false;
  history_.push_back(r);
}

void CalibrationStore::commit_pi(const std::string& qubit, double amplitude,
                                 const CalibrationResult& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  check_locked(qubit, "pi_amplitude");
  auto& q = qubits_[qubit];
  q.amp_x180_MHz = amplitude;
  q.pi_done = true;
  q.drag_done = false;
  history_.push_back(r);
}

void CalibrationStore::commit_drag(const std::string& qubit, double drag,
                                   const CalibrationResult& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  check_locked(qubit, "drag");
  auto& q = qubits_[qubit];
  q.drag = drag;
  q.drag_done = true;
  history_.push_back(r);
}

void CalibrationStore::commit_cr_amplitude(const std::string& edge, double amplitude,
                                           double control_z, double target_z,
                                           const CalibrationResult& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  check_locked(edge, "cr_amplitude");
  auto& e = edges_[edge];
  e.amplitude_MHz = amplitude;
  e.control_z_rad = control_z;
  e.target_z_rad = target_z;
  e.amplitude_done = true;
  e.phase_done = false;
  history_.push_back(r);
}

void CalibrationStore::commit_cr_phase(const std::string& edge, double phase,
                                       double control_z, double target_z,
                                       const CalibrationResult& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  check_locked(edge, "cr_phase");
  auto& e = edges_[edge];
  e.phase_rad = phase;
  e.control_z_rad = control_z;
  e.target_z_rad = target_z;
  e.phase_done = true;
  history_.push_back(r);
}

bool CalibrationStore::complete() const {
  std::lock_guard<std::mutex> lock(mutex_);
  for (const auto& [name, q] : qubits_)
    if (!q.drag_done) return false;
  for (const auto& [name, e] : edges_)
    if (!e.phase_done) return false;
  return true;
}

std::vector<CalibrationResult> CalibrationStore::history() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return history_;
}

std::vector<std::string> CalibrationStore::qubit_names() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, q] : qubits_) out.push_back(name);
  return out;
}

std::vector<std::string> CalibrationStore::edge_names() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, e] : edges_) out.push_back(name);
  return out;
}

}  // namespace qlattice::calibration
