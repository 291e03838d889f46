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

#include <optional>
#include <string>
#include <vector>

#include "qlattice/benchmarking/rb.hpp"
#include "qlattice/harness/device_config.hpp"
#include "qlattice/harness/records.hpp"

namespace qlattice::harness {

/// One column entry of the parameter comparison: the published value and the
/// value this code derives from the configured inputs (either may be absent).
struct TableCell {
  std::string column;  ///< "targeted", "Q1", ...
  std::optional<double> reported;
  std::optional<double> derived;
};

struct TableRow {
  std::string id;        ///< key into QubitConfig::reported
  std::string quantity;  ///< human-readable row title
  std::vector<TableCell> cells;
};

/// Row ids in table order (13 rows).
const std::vector<std::string>& table_row_ids();

/// Derives every row for the targeted column (when present) and each qubit.
std::vector<TableRow> design_table(const DeviceConfig& device);

/// Aligned text rendering: "reported / derived" per column.
std::string format_table(const std::vector<TableRow>& rows);

Record table_row_record(const TableRow& row, const std::string& stage);
TableRow table_row_from_record(const Record& r);

/// Plot-ready RB series: label, mode, n_qubits, m, mean survival, stderr.
/// Individual and simultaneous runs of one target appear as separate series
/// distinguished by `mode`.  No records give the header line only.
std::string rb_csv(const std::vector<benchmarking::RbRecord>& records);

/// Summary of every rb record (fit per series) as aligned text.
std::string format_rb_summary(const std::vector<Record>& rb_records);

/// Table and RB outputs from a record file's content.  Throws
/// ValidationError when no design or rb records are present.
struct ReportFiles {
  std::string table_text;
  std::string rb_csv;
  std::string rb_summary;
};
ReportFiles emit_report(const std::vector<Record>& records);

}  // namespace qlattice::harness
