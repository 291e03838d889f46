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

#include "qlattice/harness/records.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>

#include "qlattice/common/errors.hpp"

namespace qlattice::harness {

namespace {

using nlohmann::json;

// JSON has no infinity; non-finite values are written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json decay_time_json(const calibration::DecayTime& t) {
  return {{"value_us", finite_or_null(t.value_us)},
          {"stderr_us", finite_or_null(t.stderr_us)},
          {"amplitude", t.amplitude},
          {"offset", t.offset},
          {"finite", t.finite}};
}

}  // namespace

Record make_record(const std::string& kind, const std::string& stage) {
  return {{"schema", kRecordSchema}, {"kind", kind}, {"stage", stage}};
}

Record calibration_result_record(const calibration::CalibrationResult& r,
                                 const std::string& stage) {
  Record j = make_record("calibration_result", stage);
  j["target"] = r.target;
  j["parameter"] = r.parameter;
  j["initial_value"] = r.initial_value;
  j["value"] = r.value;
  j["residual"] = r.residual;
  j["first_residual"] = r.first_residual;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["alias_warning"] = r.alias_warning;
  j["note"] = r.note;
  return j;
}

Record qubit_state_record(const std::string& qubit, const calibration::SingleQubitParams& p,
                          const std::string& stage) {
  Record j = make_record("qubit_state", stage);
  j["target"] = qubit;
  j["params"] = {{"duration_ns", p.duration_ns}, {"amp_x90_MHz", p.amp_x90_MHz},
                 {"amp_x180_MHz", p.amp_x180_MHz}, {"drag", p.drag},
                 {"pi2_done", p.pi2_done}, {"pi_done", p.pi_done},
                 {"drag_done", p.drag_done}};
  return j;
}

Record edge_state_record(const std::string& edge, const calibration::CrossResonanceParams& p,
                         const std::string& stage) {
  Record j = make_record("edge_state", stage);
  j["target"] = edge;
  j["params"] = {{"control", p.control},
                 {"target", p.target},
                 {"half_duration_ns", p.half_duration_ns},
                 {"rise_ns", p.rise_ns},
                 {"amplitude_MHz", p.amplitude_MHz},
                 {"phase_rad", p.phase_rad},
                 {"control_z_rad", p.control_z_rad},
                 {"target_z_rad", p.target_z_rad},
                 {"amplitude_done", p.amplitude_done},
                 {"phase_done", p.phase_done}};
  return j;
}

calibration::SingleQubitParams qubit_params_from_json(const json& j) {
  calibration::SingleQubitParams p;
  p.duration_ns = j.at("duration_ns").get<double>();
  p.amp_x90_MHz = j.at("amp_x90_MHz").get<double>();
  p.amp_x180_MHz = j.at("amp_x180_MHz").get<double>();
  p.drag = j.at("drag").get<double>();
  p.pi2_done = j.at("pi2_done").get<bool>();
  p.pi_done = j.at("pi_done").get<bool>();
  p.drag_done = j.at("drag_done").get<bool>();
  return p;
}

calibration::CrossResonanceParams edge_params_from_json(const json& j) {
  calibration::CrossResonanceParams p;
  p.control = j.at("control").get<std::string>();
  p.target = j.at("target").get<std::string>();
  p.half_duration_ns = j.at("half_duration_ns").get<double>();
  p.rise_ns = j.at("rise_ns").get<double>();
  p.amplitude_MHz = j.at("amplitude_MHz").get<double>();
  p.phase_rad = j.at("phase_rad").get<double>();
  p.control_z_rad = j.at("control_z_rad").get<double>();
  p.target_z_rad = j.at("target_z_rad").get<double>();
  p.amplitude_done = j.at("amplitude_done").get<bool>();
  p.phase_done = j.at("phase_done").get<bool>();
  return p;
}

Record rb_record(const benchmarking::RbRecord& rec, const benchmarking::DecayFit& fit,
                 const std::string& stage) {
  Record j = make_record("rb", stage);
  j["label"] = rec.label;
  j["mode"] = rec.mode;
  j["n_qubits"] = rec.n_qubits;
  j["lengths"] = rec.lengths;
  j["randomizations"] = rec.randomizations;
  j["seed"] = rec.seed;
  j["survival"] = rec.survival;
  j["mean"] = rec.mean;
  j["stderr"] = rec.stderr_;
  j["fit"] = {{"A", fit.A},
              {"B", fit.B},
              {"p", fit.p},
              {"A_stderr", fit.A_stderr},
              {"B_stderr", fit.B_stderr},
              {"p_stderr", fit.p_stderr},
              {"dimension", fit.dimension},
              {"fidelity", fit.fidelity},
              {"fidelity_stderr", fit.fidelity_stderr},
              {"converged", fit.converged},
              {"diagnostic", fit.diagnostic}};
  return j;
}

benchmarking::RbRecord rb_from_record(const Record& r) {
  if (r.value("kind", "") != "rb") throw ValidationError("not an rb record");
  benchmarking::RbRecord rec;
  rec.label = r.at("label").get<std::string>();
  rec.mode = r.at("mode").get<std::string>();
  rec.n_qubits = r.at("n_qubits").get<int>();
  rec.lengths = r.at("lengths").get<std::vector<int>>();
  rec.randomizations = r.at("randomizations").get<int>();
  rec.seed = r.at("seed").get<std::uint64_t>();
  rec.survival = r.at("survival").get<std::vector<std::vector<double>>>();
  rec.summarize();
  return rec;
}

Record coherence_record(const std::string& qubit, const calibration::CoherenceFit& fit,
                        double injected_t1_us, double injected_t2echo_us,
                        const std::string& stage) {
  Record j = make_record("coherence", stage);
  j["target"] = qubit;
  j["t1"] = decay_time_json(fit.t1);
  j["t2echo"] = decay_time_json(fit.t2echo);
  j["injected_T1_us"] = finite_or_null(injected_t1_us);
  j["injected_T2echo_us"] = finite_or_null(injected_t2echo_us);
  return j;
}

Record failure_record(const std::string& stage, const std::string& message) {
  Record j = make_record("failure", stage);
  j["message"] = message;
  return j;
}

calibration::CalibrationStore store_from_records(const std::vector<Record>& records) {
  calibration::CalibrationStore store;
  for (const auto& r : records) {
    const std::string kind = r.value("kind", "");
    if (kind == "qubit_state")
      store.set_initial_qubit(r.at("target").get<std::string>(),
                              qubit_params_from_json(r.at("params")));
    else if (kind == "edge_state")
      store.set_initial_edge(r.at("target").get<std::string>(),
                             edge_params_from_json(r.at("params")));
  }
  return store;
}

std::string serialize_records(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::vector<Record> read_records(const std::string& path) {
  std::vector<Record> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ValidationError(path + ":" + std::to_string(n) + ": malformed record");
    }
    if (out.back().value("schema", "") != kRecordSchema)
      throw ValidationError(path + ":" + std::to_string(n) + ": unsupported record schema");
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void append_records(const std::string& path, const std::vector<Record>& batch) {
  std::string content;
  {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      content = buf.str();
    }
  }
  content += serialize_records(batch);
  write_file_atomic(path, content);
}

}  // namespace qlattice::harness
