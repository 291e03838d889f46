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

#include "qlattice/harness/report.hpp"

#include <cmath>
#include <fmt/format.h>
#include <map>

#include "qlattice/common/errors.hpp"
#include "qlattice/device/inverse_fit.hpp"
#include "qlattice/device/readout.hpp"
#include "qlattice/device/transmon.hpp"

namespace qlattice::harness {

namespace {

struct RowInfo {
  const char* id;
  const char* quantity;
};

const std::vector<RowInfo>& rows_info() {
  static const std::vector<RowInfo> rows = {
      {"f01_GHz", "qubit transition frequency (GHz)"},
      {"anharmonicity_MHz", "anharmonicity (MHz)"},
      {"critical_current_nA", "critical current (nA)"},
      {"qubit_capacitance_fF", "qubit capacitance (fF)"},
      {"ej_ec", "E_J/E_C"},
      {"charge_dispersion_kHz", "charge dispersion (kHz)"},
      {"tphi_charge_ms", "T_phi from charge (ms)"},
      {"readout_GHz", "readout resonator (GHz)"},
      {"readout_q", "readout Q factor"},
      {"chi_MHz", "dispersive shift chi (MHz)"},
      {"g_readout_MHz", "g_R coupling to readout (MHz)"},
      {"coupling_capacitance_fF", "coupling capacitance C_R (fF)"},
      {"purcell_t1_us", "Purcell limited T1 (us)"},
  };
  return rows;
}

// Derived values of one column keyed by row id.
std::map<std::string, double> derive_column(const QubitConfig& q,
                                            const device::ReadoutResonator& r) {
  std::map<std::string, double> out;
  if (q.circuit) {
    const auto s = device::diagonalize_transmon(*q.circuit);
    out["f01_GHz"] = s.f01_GHz;
    out["anharmonicity_MHz"] = s.anharmonicity_MHz;
  }
  device::TransmonCircuit guess;
  guess.critical_current_nA = q.circuit ? q.circuit->critical_current_nA : 27.0;
  guess.total_capacitance_fF = q.circuit ? q.circuit->total_capacitance_fF : 65.0;
  const auto fit = device::fit_circuit_to_spectrum(q.f01_GHz, q.anharmonicity_MHz, guess);
  out["critical_current_nA"] = fit.circuit.critical_current_nA;
  out["qubit_capacitance_fF"] = fit.circuit.total_capacitance_fF;
  out["ej_ec"] = fit.spectrum.ej_ec_ratio;
  out["charge_dispersion_kHz"] = fit.spectrum.charge_dispersion_kHz;
  out["tphi_charge_ms"] = device::tphi_from_dispersion(fit.spectrum.charge_dispersion_kHz);
  const double detuning_MHz = (q.f01_GHz - r.frequency_GHz) * 1e3;
  out["chi_MHz"] = device::dispersive_shift(r.coupling_MHz, detuning_MHz, q.anharmonicity_MHz);
  if (r.coupling_capacitance_fF > 0.0)
    out["g_readout_MHz"] = device::g_from_coupling_capacitance(
        r.coupling_capacitance_fF, fit.circuit.total_capacitance_fF, r.frequency_GHz,
        fit.spectrum.ej_ec_ratio);
  out["purcell_t1_us"] =
      device::purcell_t1(r.coupling_MHz, detuning_MHz, r.frequency_GHz, r.quality_factor);
  return out;
}

std::optional<double> lookup(const std::map<std::string, double>& m, const std::string& k) {
  auto it = m.find(k);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

std::string cell_text(const TableCell& c) {
  auto fmt_value = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    const double a = std::abs(*v);
    if (a >= 1000.0) return fmt::format("{:.0f}", *v);
    if (a >= 100.0) return fmt::format("{:.1f}", *v);
    if (a >= 10.0) return fmt::format("{:.2f}", *v);
    return fmt::format("{:.3f}", *v);
  };
  return fmt_value(c.reported) + " / " + fmt_value(c.derived);
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

const std::vector<std::string>& table_row_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& r : rows_info()) v.push_back(r.id);
    return v;
  }();
  return ids;
}

std::vector<TableRow> design_table(const DeviceConfig& device) {
  struct Column {
    std::string name;
    std::map<std::string, double> reported, derived;
  };
  std::vector<Column> columns;
  if (device.targeted) {
    const auto& t = *device.targeted;
    columns.push_back({"targeted", t.qubit.reported, derive_column(t.qubit, t.readout)});
  }
  for (const auto& q : device.qubits) {
    const auto& r = device.readout_of(q.name).resonator;
    columns.push_back({q.name, q.reported, derive_column(q, r)});
  }
  std::vector<TableRow> rows;
  for (const auto& info : rows_info()) {
    TableRow row{info.id, info.quantity, {}};
    for (const auto& c : columns)
      row.cells.push_back({c.name, lookup(c.reported, info.id), lookup(c.derived, info.id)});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table(const std::vector<TableRow>& rows) {
  if (rows.empty()) return {};
  std::size_t title_w = 8;
  std::vector<std::size_t> widths(rows.front().cells.size(), 0);
  for (const auto& r : rows) {
    title_w = std::max(title_w, r.quantity.size());
    for (std::size_t i = 0; i < r.cells.size() && i < widths.size(); ++i)
      widths[i] = std::max({widths[i], cell_text(r.cells[i]).size(), r.cells[i].column.size()});
  }
  std::string out = fmt::format("{:<{}}", "Quantity (reported / derived)", title_w + 2);
  for (std::size_t i = 0; i < widths.size(); ++i)
    out += fmt::format(" | {:>{}}", rows.front().cells[i].column, widths[i]);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{:<{}}", r.quantity, title_w + 2);
    for (std::size_t i = 0; i < widths.size(); ++i)
      out += fmt::format(" | {:>{}}", i < r.cells.size() ? cell_text(r.cells[i]) : "", widths[i]);
    out += '\n';
  }
  return out;
}

Record table_row_record(const TableRow& row, const std::string& stage) {
  Record j = make_record("design_row", stage);
  j["id"] = row.id;
  j["quantity"] = row.quantity;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : row.cells)
    j["cells"].push_back({{"column", c.column},
                          {"reported", optional_json(c.reported)},
                          {"derived", optional_json(c.derived)}});
  return j;
}

TableRow table_row_from_record(const Record& r) {
  TableRow row;
  row.id = r.at("id").get<std::string>();
  row.quantity = r.at("quantity").get<std::string>();
  for (const auto& c : r.at("cells"))
    row.cells.push_back({c.at("column").get<std::string>(), optional_from(c.at("reported")),
                         optional_from(c.at("derived"))});
  return row;
}

std::string rb_csv(const std::vector<benchmarking::RbRecord>& records) {
  std::string out = "label,mode,n_qubits,m,mean_survival,stderr\n";
  for (const auto& r : records)
    for (std::size_t i = 0; i < r.lengths.size(); ++i)
      out += fmt::format("{},{},{},{},{:.6f},{:.6f}\n", r.label, r.mode, r.n_qubits,
                         r.lengths[i], i < r.mean.size() ? r.mean[i] : 0.0,
                         i < r.stderr_.size() ? r.stderr_[i] : 0.0);
  return out;
}

std::string format_rb_summary(const std::vector<Record>& rb_records) {
  std::string out = fmt::format("{:<10} {:<13} {:>2} {:>9} {:>9} {:>10} {:>9}\n", "target",
                                "mode", "n", "p", "p_err", "F/Clifford", "F_err");
  for (const auto& r : rb_records) {
    const auto& f = r.at("fit");
    out += fmt::format("{:<10} {:<13} {:>2} {:>9.5f} {:>9.5f} {:>10.5f} {:>9.5f}{}\n",
                       r.at("label").get<std::string>(), r.at("mode").get<std::string>(),
                       r.at("n_qubits").get<int>(), f.at("p").get<double>(),
                       f.at("p_stderr").get<double>(), f.at("fidelity").get<double>(),
                       f.at("fidelity_stderr").get<double>(),
                       f.at("converged").get<bool>() ? "" : "  (fit did not converge)");
  }
  return out;
}

ReportFiles emit_report(const std::vector<Record>& records) {
  std::vector<TableRow> rows;
  std::vector<Record> rb;
  std::vector<benchmarking::RbRecord> series;
  for (const auto& r : records) {
    const std::string kind = r.value("kind", "");
    if (kind == "design_row") rows.push_back(table_row_from_record(r));
    if (kind == "rb") {
      rb.push_back(r);
      series.push_back(rb_from_record(r));
    }
  }
  if (rows.empty() && rb.empty())
    throw ValidationError("no design or rb records to report");
  ReportFiles out;
  out.table_text = format_table(rows);
  out.rb_csv = rb_csv(series);
  out.rb_summary = rb.empty() ? std::string() : format_rb_summary(rb);
  return out;
}

}  // namespace qlattice::harness
