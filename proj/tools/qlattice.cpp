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

// Command-line front end: design report, pulse simulation, calibration,
// randomized benchmarking, reporting and whole campaigns.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <iostream>
#include <numbers>

#include "qlattice/calibration/cross_resonance.hpp"
#include "qlattice/calibration/single_qubit.hpp"
#include "qlattice/common/errors.hpp"
#include "qlattice/device/coupling.hpp"
#include "qlattice/harness/campaign.hpp"
#include "qlattice/harness/device_config.hpp"
#include "qlattice/harness/operations.hpp"
#include "qlattice/harness/records.hpp"
#include "qlattice/harness/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qlattice;
using namespace qlattice::harness;

struct Globals {
  std::string device = "devices/ibm4q.json";
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;

  std::string out_dir() const { return resolve_output_dir(out, ""); }
  std::string records_path() const { return (fs::path(out_dir()) / "records.jsonl").string(); }
};

std::vector<Record> read_state(const std::string& path) {
  auto records = read_records(path);
  if (records.empty()) throw ValidationError("no records found in " + path);
  return records;
}

int cmd_design(const Globals& g) {
  const auto device = load_device(g.device);
  const auto rows = design_table(device);
  fmt::print("{}", format_table(rows));
  std::vector<Record> batch;
  for (const auto& r : rows) batch.push_back(table_row_record(r, "design"));
  append_records(g.records_path(), batch);
  for (const auto& e : device.edges) {
    const auto& c = device.qubit(e.control);
    const auto w = device::cr_window_classify(c.f01_GHz, c.anharmonicity_MHz,
                                              device.qubit(e.target).f01_GHz);
    fmt::print("{}: {} -> {}  detuning {:+.0f} MHz  J {:.3f} MHz  {}\n", e.name, e.control,
               e.target, (c.f01_GHz - device.qubit(e.target).f01_GHz) * 1e3,
               device.exchange_J(e.control, e.target), device::to_string(w));
  }
  return kExitOk;
}

int cmd_simulate(const Globals& g, const std::string& target, const std::string& gate,
                 const std::string& calibration_path) {
  const auto device = load_device(g.device);
  const auto records = read_records(calibration_path.empty() ? g.records_path() : calibration_path);
  const auto store = store_from_records(records);
  if (device.has_edge(target)) {
    const auto& e = device.edge(target);
    if (!store.has_edge(target)) throw OrderingError(target + " has no calibration state");
    dynamics::PulseSimulator sim(device.model({e.control, e.target}));
    calibration::CrossResonanceCalibrator cal(sim, e.name, e.control, e.target);
    const auto cr = store.edge(target);
    const auto control = store.qubit(e.control);
    const auto fit = cal.tomography(cr, control);
    fmt::print("{}: amplitude {:.4f} MHz, phase {:.3f} deg, duration {:.1f} ns\n", target,
               cr.amplitude_MHz, cr.phase_rad * 180.0 / std::numbers::pi,
               calibration::echoed_cr_duration(cr, control));
    fmt::print("ZX90 fidelity with stored corrections: {:.6f}\n", cal.gate_fidelity(cr, control));
    fmt::print("best corrections: control Z {:.4f} rad, target Z {:.4f} rad, axis {:.4f} rad "
               "(fidelity {:.6f})\n",
               fit.control_z_rad, fit.target_z_rad, fit.axis_rad, fit.fidelity);
    return kExitOk;
  }
  calibration::SingleQubitParams p;
  if (store.has_qubit(target)) {
    p = store.qubit(target);
  } else {
    device.qubit_index(target);
    p.amp_x90_MHz = area_estimate_x90(p);
    p.amp_x180_MHz = 2.0 * p.amp_x90_MHz;
    fmt::print("{} has no calibration state; using the area estimate\n", target);
  }
  dynamics::PulseSimulator sim(device.model({target}));
  calibration::QubitCalibrator cal(sim, 0, target);
  const auto which = calibration::single_qubit_gate_from_string(gate);
  fmt::print("{} {}: rotation {:.6f} rad, P(1) {:.6f}, level-2 after X180 {:.3e}\n", target,
             gate, cal.rotation_angle(p, which), cal.excited_probability(p, {which}),
             cal.leakage_after_pi(p));
  return kExitOk;
}

int cmd_calibrate(const Globals& g, std::vector<std::string> qubits,
                  const std::vector<std::string>& edges, std::uint64_t shots) {
  const auto device = load_device(g.device);
  auto store = store_from_records(read_records(g.records_path()));
  if (qubits.empty() && edges.empty())
    for (const auto& q : device.qubits) qubits.push_back(q.name);
  calibration::CalibrationOptions o;
  o.shots = shots;
  o.seed = g.seed;
  const auto results = calibrate_device(device, store, qubits, edges, o, g.threads);
  std::vector<Record> batch;
  for (const auto& r : results) {
    batch.push_back(calibration_result_record(r, "calibrate"));
    fmt::print("{:<5} {:<14} {:>10.5f} -> {:>10.5f}  residual {:.4f}  {}{}\n", r.target,
               r.parameter, r.initial_value, r.value, r.residual,
               r.converged ? "converged" : "NOT converged",
               r.note.empty() ? "" : "  (" + r.note + ")");
  }
  for (const auto& q : qubits) batch.push_back(qubit_state_record(q, store.qubit(q), "calibrate"));
  for (const auto& e : edges) batch.push_back(edge_state_record(e, store.edge(e), "calibrate"));
  append_records(g.records_path(), batch);
  return kExitOk;
}

struct RbArgs {
  std::vector<std::string> targets;
  bool simultaneous = false;
  int randomizations = 30;
  std::vector<int> lengths;
  std::uint64_t shots = 0;
  bool no_noise = false;
  std::vector<std::string> zz;  ///< "Q2:Q3:0.05"
  double leak_12 = 0.0, leak_21 = 0.0;
  int trajectories = 16;
};

NamedCoupling parse_zz(const std::string& s) {
  const auto a = s.find(':'), b = s.rfind(':');
  if (a == std::string::npos || a == b)
    throw ValidationError("--zz expects QA:QB:MHz, got " + s);
  try {
    return {s.substr(0, a), s.substr(a + 1, b - a - 1), std::stod(s.substr(b + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--zz expects QA:QB:MHz, got " + s);
  }
}

int cmd_rb(const Globals& g, const RbArgs& a) {
  const auto device = load_device(g.device);
  const auto store = store_from_records(read_state(g.records_path()));
  benchmarking::RbOptions o;
  o.randomizations = a.randomizations;
  o.lengths = a.lengths;
  o.shots = a.shots;
  o.seed = g.seed;
  o.threads = g.threads;
  std::vector<Record> batch;
  std::vector<benchmarking::RbRecord> series;
  auto emit = [&](const benchmarking::RbRecord& rec, const benchmarking::DecayFit& fit) {
    batch.push_back(rb_record(rec, fit, "rb"));
    series.push_back(rec);
    fmt::print("{:<6} {:<12} p = {:.5f} +/- {:.5f}  F = {:.5f} +/- {:.5f}\n", rec.label,
               rec.mode, fit.p, fit.p_stderr, fit.fidelity, fit.fidelity_stderr);
  };
  if (a.simultaneous) {
    if (a.targets.size() != 2) throw ValidationError("--simultaneous needs exactly two targets");
    NamedCrosstalk x;
    for (const auto& s : a.zz) x.couplings.push_back(parse_zz(s));
    x.leakage_first_to_second = a.leak_12;
    x.leakage_second_to_first = a.leak_21;
    x.trajectories = a.trajectories;
    const auto res =
        run_simultaneous_rb(device, store, a.targets[0], a.targets[1], o, !a.no_noise, x);
    for (int k = 0; k < 2; ++k) {
      emit(res.individual[k], res.individual_fit[k]);
      emit(res.simultaneous[k], res.simultaneous_fit[k]);
      fmt::print("{:<6} addressability error {:.2e}\n", a.targets[k], res.addressability[k]);
    }
  } else {
    if (a.targets.empty()) throw ValidationError("no RB targets given");
    for (const auto& t : a.targets) {
      const auto rec = run_target_rb(device, store, t, o, !a.no_noise);
      emit(rec, rec.fit());
    }
  }
  append_records(g.records_path(), batch);
  write_file_atomic((fs::path(g.out_dir()) / "rb.csv").string(), rb_csv(series));
  return kExitOk;
}

int cmd_report(const Globals& g, const std::string& records_path) {
  const auto records = read_state(records_path.empty() ? g.records_path() : records_path);
  const auto files = emit_report(records);
  if (!files.table_text.empty()) fmt::print("{}\n", files.table_text);
  if (!files.rb_summary.empty()) fmt::print("{}", files.rb_summary);
  const fs::path dir(g.out_dir());
  write_file_atomic((dir / "table.txt").string(), files.table_text);
  write_file_atomic((dir / "rb.csv").string(), files.rb_csv);
  write_file_atomic((dir / "rb_summary.txt").string(), files.rb_summary);
  return kExitOk;
}

int cmd_campaign(const Globals& g, const std::string& manifest_path, bool threads_given) {
  const auto manifest = load_manifest(manifest_path);
  CampaignOptions o;
  if (!g.out.empty()) o.output_dir = g.out;
  if (threads_given) o.threads = g.threads;
  const auto outcome = run_campaign(manifest, o);
  for (const auto& m : outcome.messages)
    if (outcome.exit_code == kExitValidation) fmt::print(stderr, "{}\n", m);
  fmt::print("output: {}\n", outcome.output_dir);
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlattice: four-transmon lattice design, calibration and benchmarking"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--device", g.device, "device description file")->capture_default_str();
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--out", g.out, "output directory (default: $QLATTICE_OUT or qlattice-out)");
  auto* threads_opt = app.add_option("--threads", g.threads, "worker threads")->capture_default_str();

  auto* design = app.add_subcommand("design", "derive the parameter comparison table");

  auto* simulate = app.add_subcommand("simulate", "simulate one calibrated gate");
  std::string sim_target, sim_gate = "X90", sim_calibration;
  simulate->add_option("--target", sim_target, "qubit or edge")->required();
  simulate->add_option("--gate", sim_gate, "single-qubit gate (X90, Y180, ...)")
      ->capture_default_str();
  simulate->add_option("--calibration", sim_calibration, "record file with calibration state");

  auto* calibrate = app.add_subcommand("calibrate", "closed-loop gate calibration");
  std::vector<std::string> cal_qubits, cal_edges;
  std::uint64_t cal_shots = 2000;
  calibrate->add_option("--qubits", cal_qubits, "qubits (default: all when no edges given)")
      ->delimiter(',');
  calibrate->add_option("--edges", cal_edges, "CR edges")->delimiter(',');
  calibrate->add_option("--shots", cal_shots, "shots per point (0 = exact)")->capture_default_str();

  auto* rb = app.add_subcommand("rb", "randomized benchmarking");
  RbArgs rb_args;
  rb->add_option("--targets", rb_args.targets, "qubits and/or edges")
      ->required()
      ->delimiter(',');
  rb->add_flag("--simultaneous", rb_args.simultaneous, "run the two targets simultaneously");
  rb->add_option("--randomizations", rb_args.randomizations)->capture_default_str();
  rb->add_option("--lengths", rb_args.lengths, "sequence lengths (default per width)")
      ->delimiter(',');
  rb->add_option("--shots", rb_args.shots, "shots per sequence (0 = exact)")->capture_default_str();
  rb->add_flag("--no-noise", rb_args.no_noise, "disable T1/T2 noise");
  rb->add_option("--zz", rb_args.zz, "static ZZ between the sets, QA:QB:MHz (repeatable)");
  rb->add_option("--leakage-first-to-second", rb_args.leak_12, "drive leakage fraction");
  rb->add_option("--leakage-second-to-first", rb_args.leak_21, "drive leakage fraction");
  rb->add_option("--trajectories", rb_args.trajectories, "trajectories with crosstalk")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "comparison table and RB CSV from records");
  std::string report_records;
  report->add_option("--records", report_records, "record file (default: <out>/records.jsonl)");

  auto* campaign = app.add_subcommand("campaign", "run a campaign manifest");
  std::string manifest;
  campaign->add_option("manifest", manifest, "manifest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  try {
    if (*design) return cmd_design(g);
    if (*simulate) return cmd_simulate(g, sim_target, sim_gate, sim_calibration);
    if (*calibrate) return cmd_calibrate(g, cal_qubits, cal_edges, cal_shots);
    if (*rb) return cmd_rb(g, rb_args);
    if (*report) return cmd_report(g, report_records);
    if (*campaign) return cmd_campaign(g, manifest, threads_opt->count() > 0);
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const OrderingError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    fmt::print(stderr, "failed: {}\n", e.what());
    return kExitStageFailure;
  }
  return kExitOk;
}
