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

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qlattice/benchmarking/decay_fit.hpp"
#include "qlattice/benchmarking/rb.hpp"
#include "qlattice/calibration/coherence.hpp"
#include "qlattice/calibration/store.hpp"

namespace qlattice::harness {

/// Version tag carried by every persisted record.
inline constexpr const char* kRecordSchema = "qlattice.record/1";

using Record = nlohmann::json;

/// {"schema": ..., "kind": kind, "stage": stage}.
Record make_record(const std::string& kind, const std::string& stage);

Record calibration_result_record(const calibration::CalibrationResult& r,
                                 const std::string& stage);
/// Full parameter snapshot of one qubit or edge; the last snapshot of each
/// target in a record file is the persisted calibration state.
Record qubit_state_record(const std::string& qubit, const calibration::SingleQubitParams& p,
                          const std::string& stage);
Record edge_state_record(const std::string& edge, const calibration::CrossResonanceParams& p,
                         const std::string& stage);
Record rb_record(const benchmarking::RbRecord& rec, const benchmarking::DecayFit& fit,
                 const std::string& stage);
Record coherence_record(const std::string& qubit, const calibration::CoherenceFit& fit,
                        double injected_t1_us, double injected_t2echo_us,
                        const std::string& stage);
Record failure_record(const std::string& stage, const std::string& message);

calibration::SingleQubitParams qubit_params_from_json(const nlohmann::json& j);
calibration::CrossResonanceParams edge_params_from_json(const nlohmann::json& j);
/// Rebuilds RbRecord (survival matrix included) from an rb record.
benchmarking::RbRecord rb_from_record(const Record& r);
/// Calibration state from the snapshots in `records` (later ones win).
calibration::CalibrationStore store_from_records(const std::vector<Record>& records);

/// One JSON document per line, keys sorted, doubles in shortest round-trip
/// form; identical records give identical bytes.
std::string serialize_records(const std::vector<Record>& records);

/// Reads a line-delimited record file; a missing file yields no records.
std::vector<Record> read_records(const std::string& path);
/// Appends a batch as one unit: the existing content plus the batch is
/// written to a temporary file that then replaces the original, so a failure
/// never leaves part of a batch behind.
void append_records(const std::string& path, const std::vector<Record>& batch);
/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qlattice::harness
