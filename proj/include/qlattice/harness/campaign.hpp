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
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/harness/device_config.hpp"

namespace qlattice::harness {

inline constexpr const char* kCampaignFormat = "qlattice.campaign/1";

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "QLATTICE_OUT";

/// Exit codes shared by the CLI and campaign runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitStageFailure = 3;

/// One campaign stage: "design", "calibrate", "coherence", "rb",
/// "simultaneous_rb" or "report", with its own settings.
struct StageSpec {
  std::string stage;
  nlohmann::json config;  ///< the stage object as written
  std::uint64_t seed = 0;  ///< explicit or derived from the campaign seed
  bool acceptance = false;
};

struct CampaignManifest {
  std::string device_path;  ///< resolved against the manifest's directory
  std::uint64_t seed = 1;
  std::string output_dir;   ///< may be empty (then CLI / environment)
  unsigned threads = 1;
  std::vector<StageSpec> stages;

  /// Rejects unknown stages and dependency-order violations (OrderingError),
  /// e.g. rb on a target that no earlier stage calibrated.
  void validate(const DeviceConfig& device) const;
};

CampaignManifest manifest_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
CampaignManifest load_manifest(const std::string& path);

struct CampaignOptions {
  std::optional<std::string> output_dir;  ///< overrides manifest and environment
  std::optional<unsigned> threads;        ///< overrides the manifest
  bool quiet = false;
};

struct CampaignOutcome {
  int exit_code = kExitOk;
  std::string output_dir;
  std::vector<std::string> messages;  ///< one line per stage
};

/// Runs the stages in order.  Scientific records go to
/// <out>/records.jsonl (one atomic batch per stage); timestamps and host
/// details go to <out>/metadata.json.  A stage that throws halts the run
/// with a failure record and exit code 3; an acceptance-tagged stage whose
/// expectations are not met also returns 3.  Manifest or device problems
/// return 2 before anything runs.
CampaignOutcome run_campaign(const CampaignManifest& manifest, const CampaignOptions& options);

/// Resolution order: explicit, manifest, $QLATTICE_OUT, "qlattice-out".
std::string resolve_output_dir(const std::optional<std::string>& explicit_dir,
                               const std::string& manifest_dir);

}  // namespace qlattice::harness
