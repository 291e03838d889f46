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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qlattice/common/errors.hpp"
#include "qlattice/harness/campaign.hpp"
#include "qlattice/harness/device_config.hpp"
#include "qlattice/harness/records.hpp"
#include "qlattice/harness/report.hpp"

namespace qlattice::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kDevicePath = std::string(QLATTICE_SOURCE_DIR) + "/devices/ibm4q.json";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qlattice-harness-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json device_json() { return json::parse(slurp(kDevicePath)); }

// ------------------------------------------------------------------ device

TEST(Device, ShippedFileLoads) {
  const auto d = load_device(kDevicePath);
  EXPECT_EQ(d.qubits.size(), 4u);
  EXPECT_DOUBLE_EQ(d.qubit("Q1").f01_GHz, 5.303);
  EXPECT_DOUBLE_EQ(d.qubit("Q2").f01_GHz, 5.101);
  EXPECT_DOUBLE_EQ(d.qubit("Q3").f01_GHz, 5.291);
  EXPECT_DOUBLE_EQ(d.qubit("Q4").f01_GHz, 5.415);
  EXPECT_TRUE(d.has_edge("CR12"));
  EXPECT_EQ(d.edge("CR41").control, "Q4");
  EXPECT_EQ(d.model({"Q1", "Q2", "Q3", "Q4"}).dim(), 81);
}

TEST(Device, RoundTripIsIdentity) {
  const auto d = load_device(kDevicePath);
  const json once = device_to_json(d);
  const json twice = device_to_json(device_from_json(once));
  EXPECT_EQ(once, twice);
  const fs::path dir = scratch_dir("roundtrip");
  save_device(d, (dir / "d.json").string());
  EXPECT_EQ(device_to_json(load_device((dir / "d.json").string())), once);
}

TEST(Device, EmptyFileIsASchemaError) {
  const fs::path dir = scratch_dir("empty");
  std::ofstream((dir / "empty.json").string()).close();
  EXPECT_THROW(load_device((dir / "empty.json").string()), ValidationError);
}

TEST(Device, DuplicatedEdgeIsATopologyError) {
  json j = device_json();
  json dup = j["edges"][0];
  dup["name"] = "CR12b";
  j["edges"].push_back(dup);
  EXPECT_THROW(device_from_json(j), ValidationError);
}

TEST(Device, QubitWithOneBusIsRejected) {
  json j = device_json();
  j["buses"].erase(0);
  try {
    device_from_json(j);
    FAIL() << "expected a topology error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("buses"), std::string::npos);
  }
}

TEST(Device, SchemaErrorsNameTheField) {
  json j = device_json();
  j["qubits"][1]["f01_GHz"] = "fast";
  try {
    device_from_json(j);
    FAIL() << "expected a schema error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("qubits[1]"), std::string::npos) << e.what();
  }
}

TEST(Device, ZeroCoherenceMeansNoNoise) {
  json j = device_json();
  j["qubits"][0].erase("T1_us");
  j["qubits"][0].erase("T2echo_us");
  const auto d = device_from_json(j);
  EXPECT_TRUE(d.noise({"Q1"}).silent());
  EXPECT_FALSE(d.noise({"Q2"}).silent());
}

// ----------------------------------------------------------------- records

TEST(Records, SerializationRoundTrip) {
  calibration::CalibrationResult r;
  r.target = "Q1";
  r.parameter = "pi2_amplitude";
  r.value = 8.76;
  r.converged = true;
  calibration::SingleQubitParams q;
  q.amp_x90_MHz = 8.76;
  q.amp_x180_MHz = 17.5;
  q.drag = 0.03;
  q.pi2_done = q.pi_done = q.drag_done = true;
  const std::vector<Record> batch{calibration_result_record(r, "calibrate"),
                                  qubit_state_record("Q1", q, "calibrate")};
  const fs::path dir = scratch_dir("records");
  const std::string path = (dir / "r.jsonl").string();
  append_records(path, batch);
  append_records(path, {failure_record("rb", "boom")});
  const auto back = read_records(path);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[0]["schema"], kRecordSchema);
  EXPECT_EQ(back[2]["kind"], "failure");
  const auto store = store_from_records(back);
  EXPECT_DOUBLE_EQ(store.qubit("Q1").amp_x180_MHz, 17.5);
  EXPECT_TRUE(store.qubit("Q1").drag_done);
  EXPECT_EQ(serialize_records(batch), serialize_records(batch));
}

TEST(Records, RbRecordRoundTrip) {
  benchmarking::RbRecord rec;
  rec.label = "Q1";
  rec.mode = "individual";
  rec.lengths = {1, 10, 20, 40};
  rec.randomizations = 2;
  rec.seed = 4;
  rec.survival = {{0.99, 0.98}, {0.95, 0.96}, {0.9, 0.91}, {0.85, 0.84}};
  rec.summarize();
  const auto back = rb_from_record(rb_record(rec, rec.fit(), "rb"));
  EXPECT_EQ(back.survival, rec.survival);
  EXPECT_EQ(back.lengths, rec.lengths);
  EXPECT_EQ(back.mode, "individual");
}

TEST(Records, WrongSchemaRejected) {
  const fs::path dir = scratch_dir("schema");
  std::ofstream((dir / "bad.jsonl").string()) << "{\"schema\":\"other/1\",\"kind\":\"x\"}\n";
  EXPECT_THROW(read_records((dir / "bad.jsonl").string()), ValidationError);
}

// ------------------------------------------------------------------ report

TEST(Report, DesignTableHasThirteenRows) {
  const auto rows = design_table(load_device(kDevicePath));
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows.size(), table_row_ids().size());
  for (const auto& row : rows) EXPECT_EQ(row.cells.size(), 5u) << row.id;
  const auto text = format_table(rows);
  EXPECT_NE(text.find("Purcell"), std::string::npos);
  const auto again = table_row_from_record(table_row_record(rows[0], "design"));
  EXPECT_EQ(again.id, rows[0].id);
}

TEST(Report, EmptyRbCsvIsHeaderOnly) {
  EXPECT_EQ(rb_csv({}), "label,mode,n_qubits,m,mean_survival,stderr\n");
}

TEST(Report, IndividualAndSimultaneousSeriesBothPresent) {
  benchmarking::RbRecord a;
  a.label = "CR12";
  a.n_qubits = 2;
  a.mode = "individual";
  a.lengths = {1, 2, 4, 8};
  a.randomizations = 1;
  a.survival = {{0.9}, {0.85}, {0.8}, {0.7}};
  a.summarize();
  benchmarking::RbRecord b = a;
  b.mode = "simultaneous";
  const auto csv = rb_csv({a, b});
  EXPECT_NE(csv.find("CR12,individual"), std::string::npos);
  EXPECT_NE(csv.find("CR12,simultaneous"), std::string::npos);
  const auto files = emit_report({rb_record(a, a.fit(), "rb"), rb_record(b, b.fit(), "rb")});
  EXPECT_EQ(files.rb_csv, csv);
  EXPECT_THROW(emit_report({}), ValidationError);
}

// ---------------------------------------------------------------- campaign

json manifest_json(json stages) {
  return {{"format", kCampaignFormat},
          {"device", kDevicePath},
          {"seed", 3},
          {"stages", std::move(stages)}};
}

TEST(Campaign, OutputDirectoryPrecedence) {
  ::setenv(kOutputEnv, "/from/env", 1);
  EXPECT_EQ(resolve_output_dir(std::string("/explicit"), "/manifest"), "/explicit");
  EXPECT_EQ(resolve_output_dir(std::nullopt, "/manifest"), "/manifest");
  EXPECT_EQ(resolve_output_dir(std::nullopt, ""), "/from/env");
  ::unsetenv(kOutputEnv);
  EXPECT_EQ(resolve_output_dir(std::nullopt, ""), "qlattice-out");
}

TEST(Campaign, ManifestValidation) {
  const auto device = load_device(kDevicePath);
  EXPECT_THROW(manifest_from_json(manifest_json({{{"stage", "dance"}}})).validate(device),
               ValidationError);
  EXPECT_THROW(
      manifest_from_json(manifest_json({{{"stage", "rb"}, {"targets", {"Q1"}}}})).validate(device),
      OrderingError);
  EXPECT_THROW(manifest_from_json(manifest_json({{{"stage", "report"}}})).validate(device),
               OrderingError);
  EXPECT_THROW(manifest_from_json(manifest_json(
                   {{{"stage", "calibrate"}, {"qubits", {"Q1"}}, {"edges", {"CR12"}}}}))
                   .validate(device),
               OrderingError);
  json bad = manifest_json({{{"stage", "design"}}});
  bad["format"] = "other";
  EXPECT_THROW(manifest_from_json(bad), ValidationError);
}

TEST(Campaign, DependencyErrorExitsWithValidationCode) {
  const fs::path dir = scratch_dir("dependency");
  const auto m = manifest_from_json(manifest_json({{{"stage", "rb"}, {"targets", {"Q1"}}}}));
  CampaignOptions o;
  o.output_dir = dir.string();
  o.quiet = true;
  EXPECT_EQ(run_campaign(m, o).exit_code, kExitValidation);
}

TEST(Campaign, DesignOnlyProducesTable) {
  const fs::path dir = scratch_dir("design");
  const auto m = manifest_from_json(manifest_json({{{"stage", "design"}}, {{"stage", "report"}}}));
  CampaignOptions o;
  o.output_dir = dir.string();
  o.quiet = true;
  const auto out = run_campaign(m, o);
  EXPECT_EQ(out.exit_code, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "table.txt"));
  EXPECT_TRUE(fs::exists(dir / "metadata.json"));
  const auto records = read_records((dir / "records.jsonl").string());
  EXPECT_EQ(records.size(), 14u);  // 13 rows and the report marker
  const std::string first = slurp(dir / "records.jsonl");
  run_campaign(m, o);
  EXPECT_EQ(slurp(dir / "records.jsonl"), first);
}

TEST(Campaign, FailedStageLeavesOnlyAFailureRecord) {
  const fs::path dir = scratch_dir("failure");
  const auto m = manifest_from_json(manifest_json(
      {{{"stage", "design"}},
       {{"stage", "calibrate"}, {"qubits", {"Q1"}}, {"shots", 0}},
       {{"stage", "rb"}, {"targets", {"Q1"}}, {"randomizations", 0}},
       {{"stage", "report"}}}));
  CampaignOptions o;
  o.output_dir = dir.string();
  o.quiet = true;
  const auto out = run_campaign(m, o);
  EXPECT_EQ(out.exit_code, kExitStageFailure);
  const auto records = read_records((dir / "records.jsonl").string());
  ASSERT_FALSE(records.empty());
  EXPECT_EQ(records.back()["kind"], "failure");
  EXPECT_EQ(records.back()["stage"], "rb");
  for (const auto& r : records) EXPECT_NE(r["kind"], "rb");
  EXPECT_FALSE(fs::exists(dir / "table.txt"));
}

TEST(Campaign, AcceptanceTaggedExpectationFailsTheRun) {
  const fs::path dir = scratch_dir("acceptance");
  json stages = {{{"stage", "design"}},
                 {{"stage", "calibrate"}, {"qubits", {"Q1"}}, {"shots", 0}},
                 {{"stage", "rb"},
                  {"targets", {"Q1"}},
                  {"randomizations", 2},
                  {"lengths", {1, 5, 10, 20}},
                  {"expect", {{"min_fidelity", 0.99999}}}}};
  CampaignOptions o;
  o.output_dir = dir.string();
  o.quiet = true;
  EXPECT_EQ(run_campaign(manifest_from_json(manifest_json(stages)), o).exit_code, kExitOk);
  stages[2]["acceptance"] = true;
  EXPECT_EQ(run_campaign(manifest_from_json(manifest_json(stages)), o).exit_code,
            kExitStageFailure);
}

}  // namespace
}  // namespace qlattice::harness
