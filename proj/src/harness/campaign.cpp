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

#include "qlattice/harness/campaign.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/harness/operations.hpp"
#include "qlattice/harness/records.hpp"
#include "qlattice/harness/report.hpp"

namespace qlattice::harness {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint64_t kStageSeedTag = 0x57A6E;
const std::set<std::string> kStages = {"design", "calibrate", "coherence",
                                       "rb", "simultaneous_rb", "report"};

const char* kRecordsFile = "records.jsonl";

std::vector<std::string> string_list(const json& cfg, const std::string& key,
                                     std::vector<std::string> fallback = {}) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_array()) throw ValidationError(key + ": expected a list of names");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ValidationError(key + ": expected a list of names");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::string> all_qubits(const DeviceConfig& d) {
  std::vector<std::string> out;
  for (const auto& q : d.qubits) out.push_back(q.name);
  return out;
}

benchmarking::RbOptions rb_options(const StageSpec& s, unsigned threads) {
  benchmarking::RbOptions o;
  o.randomizations = s.config.value("randomizations", 30);
  o.seed = s.seed;
  o.shots = s.config.value("shots", std::uint64_t{0});
  o.threads = threads;
  if (s.config.contains("lengths")) o.lengths = s.config.at("lengths").get<std::vector<int>>();
  return o;
}

// Expectation block for one target: a per-target object or the shared one.
json expectation_for(const StageSpec& s, const std::string& target) {
  if (!s.config.contains("expect")) return json::object();
  const json& e = s.config.at("expect");
  if (e.contains(target) && e.at(target).is_object()) return e.at(target);
  return e;
}

struct StageOutput {
  std::vector<Record> records;
  std::vector<std::string> unmet;  ///< expectations that failed
  std::string summary;
};

class Runner {
 public:
  Runner(const CampaignManifest& m, const DeviceConfig& d, std::string out, unsigned threads)
      : manifest_(m), device_(d), out_(std::move(out)), threads_(threads) {}

  StageOutput run(const StageSpec& s) {
    if (s.stage == "design") return design(s);
    if (s.stage == "calibrate") return calibrate(s);
    if (s.stage == "coherence") return coherence(s);
    if (s.stage == "rb") return rb(s);
    if (s.stage == "simultaneous_rb") return simultaneous(s);
    return report(s);
  }

  std::string records_path() const { return (fs::path(out_) / kRecordsFile).string(); }

 private:
  calibration::CalibrationStore store() const {
    return store_from_records(read_records(records_path()));
  }

  StageOutput design(const StageSpec& s) {
    StageOutput out;
    const auto rows = design_table(device_);
    for (const auto& r : rows) out.records.push_back(table_row_record(r, s.stage));
    out.summary = fmt::format("{} rows", rows.size());
    return out;
  }

  StageOutput calibrate(const StageSpec& s) {
    StageOutput out;
    const auto qubits = string_list(s.config, "qubits", all_qubits(device_));
    const auto edges = string_list(s.config, "edges");
    calibration::CalibrationOptions o;
    o.shots = s.config.value("shots", o.shots);
    o.seed = s.seed;
    o.amplitude_tolerance = s.config.value("amplitude_tolerance", o.amplitude_tolerance);
    o.phase_tolerance_deg = s.config.value("phase_tolerance_deg", o.phase_tolerance_deg);
    auto st = store();
    const auto results = calibrate_device(device_, st, qubits, edges, o, threads_);
    int converged = 0;
    for (const auto& r : results) {
      out.records.push_back(calibration_result_record(r, s.stage));
      if (r.converged) ++converged;
      else out.unmet.push_back(fmt::format("{} {} did not converge", r.target, r.parameter));
    }
    for (const auto& q : qubits) out.records.push_back(qubit_state_record(q, st.qubit(q), s.stage));
    for (const auto& e : edges) out.records.push_back(edge_state_record(e, st.edge(e), s.stage));
    out.summary = fmt::format("{}/{} calibrations converged", converged, results.size());
    return out;
  }

  StageOutput coherence(const StageSpec& s) {
    StageOutput out;
    const auto qubits = string_list(s.config, "qubits", all_qubits(device_));
    const auto shots = s.config.value("shots", std::uint64_t{10000});
    const int points = s.config.value("points", 81);
    const auto st = store();
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      const auto& q = device_.qubit(qubits[i]);
      const auto fit = measure_coherence(device_, st, q.name, shots,
                                         derive_stream(s.seed, i, 0, 0), points);
      const double t1 = q.t1_us > 0.0 ? q.t1_us : std::numeric_limits<double>::infinity();
      const double t2 = q.t2echo_us > 0.0 ? q.t2echo_us : std::numeric_limits<double>::infinity();
      out.records.push_back(coherence_record(q.name, fit, t1, t2, s.stage));
      const json e = expectation_for(s, q.name);
      if (e.contains("relative_tolerance")) {
        const double tol = e.at("relative_tolerance").get<double>();
        auto check = [&](const char* what, double got, double want) {
          if (std::isfinite(want) && !(std::abs(got / want - 1.0) <= tol))
            out.unmet.push_back(
                fmt::format("{} {} = {:.3f} us vs injected {:.3f} us", q.name, what, got, want));
        };
        check("T1", fit.t1.value_us, t1);
        check("T2echo", fit.t2echo.value_us, t2);
      }
      out.summary += fmt::format("{}: T1 {:.2f} us, T2echo {:.2f} us; ", q.name,
                                 fit.t1.value_us, fit.t2echo.value_us);
    }
    return out;
  }

  void check_fidelity(const StageSpec& s, const std::string& label,
                      const benchmarking::DecayFit& fit, StageOutput& out) {
    const json e = expectation_for(s, label);
    const double lo = e.value("min_fidelity", 0.0), hi = e.value("max_fidelity", 1.0);
    if (fit.fidelity < lo || fit.fidelity > hi)
      out.unmet.push_back(
          fmt::format("{} fidelity {:.5f} outside [{}, {}]", label, fit.fidelity, lo, hi));
  }

  StageOutput rb(const StageSpec& s) {
    StageOutput out;
    const auto targets = string_list(s.config, "targets");
    const bool noisy = s.config.value("noise", true);
    const auto st = store();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      auto o = rb_options(s, threads_);
      o.seed = derive_stream(s.seed, i, 0, 0);
      const auto rec = run_target_rb(device_, st, targets[i], o, noisy);
      const auto fit = rec.fit();
      out.records.push_back(rb_record(rec, fit, s.stage));
      check_fidelity(s, targets[i], fit, out);
      out.summary += fmt::format("{}: F = {:.5f} +/- {:.5f}; ", targets[i], fit.fidelity,
                                 fit.fidelity_stderr);
    }
    return out;
  }

  StageOutput simultaneous(const StageSpec& s) {
    StageOutput out;
    const auto sets = string_list(s.config, "sets");
    if (sets.size() != 2) throw ValidationError("simultaneous_rb needs exactly two sets");
    NamedCrosstalk x;
    x.trajectories = s.config.value("trajectories", 16);
    x.leakage_first_to_second = s.config.value("leakage_first_to_second", 0.0);
    x.leakage_second_to_first = s.config.value("leakage_second_to_first", 0.0);
    if (s.config.contains("couplings"))
      for (const auto& c : s.config.at("couplings")) {
        const auto q = c.at("qubits").get<std::vector<std::string>>();
        if (q.size() != 2) throw ValidationError("a coupling joins two qubits");
        x.couplings.push_back({q[0], q[1], c.value("zz_MHz", 0.0)});
      }
    const bool noisy = s.config.value("noise", true);
    const auto res =
        run_simultaneous_rb(device_, store(), sets[0], sets[1], rb_options(s, threads_), noisy, x);
    for (int k = 0; k < 2; ++k) {
      out.records.push_back(rb_record(res.individual[k], res.individual_fit[k], s.stage));
      out.records.push_back(rb_record(res.simultaneous[k], res.simultaneous_fit[k], s.stage));
    }
    Record a = make_record("addressability", s.stage);
    a["sets"] = sets;
    a["addressability"] = res.addressability;
    out.records.push_back(a);
    const double max_addr = s.config.contains("expect")
                                ? s.config.at("expect").value("max_addressability", 1.0)
                                : 1.0;
    for (int k = 0; k < 2; ++k) {
      if (res.addressability[k] > max_addr)
        out.unmet.push_back(fmt::format("{} addressability {:.2e} above {:.2e}", sets[k],
                                        res.addressability[k], max_addr));
      out.summary += fmt::format("{}: F {:.4f} individual, {:.4f} simultaneous; ", sets[k],
                                 res.individual_fit[k].fidelity,
                                 res.simultaneous_fit[k].fidelity);
    }
    return out;
  }

  StageOutput report(const StageSpec& s) {
    StageOutput out;
    const auto files = emit_report(read_records(records_path()));
    const fs::path dir(out_);
    write_file_atomic((dir / "table.txt").string(), files.table_text);
    write_file_atomic((dir / "rb.csv").string(), files.rb_csv);
    write_file_atomic((dir / "rb_summary.txt").string(), files.rb_summary);
    Record r = make_record("report", s.stage);
    r["files"] = {"table.txt", "rb.csv", "rb_summary.txt"};
    out.records.push_back(r);
    out.summary = "table.txt, rb.csv, rb_summary.txt";
    return out;
  }

  const CampaignManifest& manifest_;
  const DeviceConfig& device_;
  std::string out_;
  unsigned threads_;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CampaignOutcome invalid(CampaignOutcome outcome, const std::string& what) {
  outcome.exit_code = kExitValidation;
  outcome.messages.push_back("validation: " + what);
  return outcome;
}

}  // namespace

void CampaignManifest::validate(const DeviceConfig& device) const {
  if (stages.empty()) throw ValidationError("stages: at least one stage is required");
  std::set<std::string> calibrated_qubits, calibrated_edges;
  bool have_results = false;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& s = stages[i];
    const std::string where = fmt::format("stages[{}] ({})", i, s.stage);
    if (!kStages.count(s.stage)) throw ValidationError(where + ": unknown stage");
    if (s.stage == "design") have_results = true;
    if (s.stage == "calibrate") {
      std::vector<std::string> qs = string_list(s.config, "qubits", all_qubits(device));
      for (const auto& q : qs) {
        device.qubit_index(q);
        calibrated_qubits.insert(q);
      }
      for (const auto& e : string_list(s.config, "edges")) {
        const auto& edge = device.edge(e);
        for (const auto& q : {edge.control, edge.target})
          if (!calibrated_qubits.count(q))
            throw OrderingError(fmt::format("{}: edge {} needs {} calibrated first", where, e, q));
        calibrated_edges.insert(e);
      }
    }
    auto require_target = [&](const std::string& t) {
      for (const auto& q : device.target_qubits(t))
        if (!calibrated_qubits.count(q))
          throw OrderingError(fmt::format("{}: {} is not calibrated by an earlier stage", where, q));
      if (device.has_edge(t) && !calibrated_edges.count(t))
        throw OrderingError(fmt::format("{}: {} is not calibrated by an earlier stage", where, t));
    };
    if (s.stage == "coherence")
      for (const auto& q : string_list(s.config, "qubits", all_qubits(device))) require_target(q);
    if (s.stage == "rb") {
      const auto targets = string_list(s.config, "targets");
      if (targets.empty()) throw ValidationError(where + ": targets missing");
      for (const auto& t : targets) require_target(t);
      have_results = true;
    }
    if (s.stage == "simultaneous_rb") {
      const auto sets = string_list(s.config, "sets");
      if (sets.size() != 2) throw ValidationError(where + ": exactly two sets are required");
      std::set<std::string> seen;
      for (const auto& t : sets) {
        require_target(t);
        for (const auto& q : device.target_qubits(t))
          if (!seen.insert(q).second)
            throw ValidationError(fmt::format("{}: qubit {} appears in both sets", where, q));
      }
      have_results = true;
    }
    if (s.stage == "report" && !have_results)
      throw OrderingError(where + ": report needs an earlier design or rb stage");
  }
}

CampaignManifest manifest_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ValidationError("manifest: expected an object");
  if (j.value("format", "") != kCampaignFormat)
    throw ValidationError(fmt::format("format: expected \"{}\"", kCampaignFormat));
  CampaignManifest m;
  if (!j.contains("device") || !j["device"].is_string())
    throw ValidationError("device: missing device file path");
  fs::path dev(j["device"].get<std::string>());
  m.device_path = dev.is_absolute() ? dev.string() : (fs::path(base_dir) / dev).string();
  m.seed = j.value("seed", std::uint64_t{1});
  m.threads = j.value("threads", 1u);
  if (j.contains("output")) {
    fs::path out(j["output"].get<std::string>());
    m.output_dir = out.is_absolute() ? out.string() : (fs::path(base_dir) / out).string();
  }
  if (!j.contains("stages") || !j["stages"].is_array())
    throw ValidationError("stages: expected a list");
  for (std::size_t i = 0; i < j["stages"].size(); ++i) {
    const json& s = j["stages"][i];
    if (!s.is_object() || !s.contains("stage") || !s["stage"].is_string())
      throw ValidationError(fmt::format("stages[{}].stage: missing", i));
    StageSpec spec;
    spec.stage = s["stage"].get<std::string>();
    spec.config = s;
    spec.seed = s.contains("seed") ? s["seed"].get<std::uint64_t>()
                                   : derive_stream(m.seed, kStageSeedTag, i, 0);
    spec.acceptance = s.value("acceptance", false);
    m.stages.push_back(std::move(spec));
  }
  return m;
}

CampaignManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": not valid JSON");
  }
  const fs::path base = fs::path(path).has_parent_path() ? fs::path(path).parent_path() : ".";
  return manifest_from_json(j, base.string());
}

std::string resolve_output_dir(const std::optional<std::string>& explicit_dir,
                               const std::string& manifest_dir) {
  if (explicit_dir && !explicit_dir->empty()) return *explicit_dir;
  if (!manifest_dir.empty()) return manifest_dir;
  if (const char* env = std::getenv(kOutputEnv); env && *env) return env;
  return "qlattice-out";
}

CampaignOutcome run_campaign(const CampaignManifest& manifest, const CampaignOptions& options) {
  CampaignOutcome outcome;
  outcome.output_dir = resolve_output_dir(options.output_dir, manifest.output_dir);
  const unsigned threads = options.threads.value_or(manifest.threads);
  DeviceConfig device;
  try {
    device = load_device(manifest.device_path);
    manifest.validate(device);
  } catch (const ValidationError& e) {
    return invalid(outcome, e.what());
  } catch (const OrderingError& e) {
    return invalid(outcome, e.what());
  } catch (const json::exception& e) {
    return invalid(outcome, e.what());
  }

  const fs::path dir(outcome.output_dir);
  fs::create_directories(dir);
  for (const char* f : {kRecordsFile, "table.txt", "rb.csv", "rb_summary.txt", "metadata.json"})
    fs::remove(dir / f);

  Runner runner(manifest, device, outcome.output_dir, threads);
  json meta = {{"started_utc", utc_now()},
               {"threads", threads},
               {"device", manifest.device_path},
               {"stages", json::array()}};
  for (std::size_t i = 0; i < manifest.stages.size(); ++i) {
    const auto& s = manifest.stages[i];
    const auto t0 = std::chrono::steady_clock::now();
    std::string line;
    bool failed = false;
    try {
      StageOutput out = runner.run(s);
      for (const auto& u : out.unmet) {
        Record r = make_record("expectation", s.stage);
        r["message"] = u;
        r["acceptance"] = s.acceptance;
        out.records.push_back(r);
      }
      append_records(runner.records_path(), out.records);
      line = fmt::format("[{}] {}: {}", i, s.stage, out.summary);
      if (!out.unmet.empty()) {
        line += fmt::format(" ({} expectation(s) not met)", out.unmet.size());
        if (s.acceptance) failed = true;
      }
    } catch (const std::exception& e) {
      append_records(runner.records_path(), {failure_record(s.stage, e.what())});
      line = fmt::format("[{}] {}: FAILED: {}", i, s.stage, e.what());
      failed = true;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    meta["stages"].push_back({{"stage", s.stage}, {"seconds", seconds}, {"ok", !failed}});
    outcome.messages.push_back(line);
    if (!options.quiet) fmt::print(stderr, "{}\n", line);
    if (failed) {
      outcome.exit_code = kExitStageFailure;
      break;
    }
  }
  meta["finished_utc"] = utc_now();
  write_file_atomic((dir / "metadata.json").string(), meta.dump(2) + "\n");
  return outcome;
}

}  // namespace qlattice::harness
