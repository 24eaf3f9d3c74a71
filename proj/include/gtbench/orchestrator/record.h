// Copyright 2026 The GTBench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GTBENCH_ORCHESTRATOR_RECORD_H_
#define GTBENCH_ORCHESTRATOR_RECORD_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtbench/orchestrator/monitor.h"
#include "gtbench/orchestrator/triage.h"

namespace gtbench {

// First poll timestamps for one bug in one trial; nullopt means censored at
// the trial duration.
struct BugTimes {
  std::optional<double> reach;
  std::optional<double> trigger;
};

struct TrialRecord {
  uint32_t trial_id = 0;
  uint64_t rng_seed = 0;
  bool valid = true;
  std::string invalid_reason;
  uint64_t executions = 0;
  double wall_s = 0;
  size_t crash_count = 0;
  std::vector<BugTimes> bugs;  // indexed by bug id
  TriageResult triage;
};

struct CampaignRecord {
  std::string fuzzer;
  std::string target;
  double duration_s = 0;
  double poll_interval_s = 0;
  std::vector<std::string> bug_tags;  // indexed by bug id
  std::vector<TrialRecord> trials;     // valid and invalid

  size_t valid_trials() const;
  size_t invalid_trials() const;
};

// First reach/trigger per bug from a monitor event stream.
std::vector<BugTimes> BugTimesFromEvents(std::span<const BugEvent> events,
                                         uint32_t bug_count);

// Writes campaign.json (header, including invalid trials and their reasons),
// events.csv (valid trials only) and triage.json under `dir`.
void WriteCampaignRecord(const CampaignRecord& record,
                         const std::filesystem::path& dir);

// Inverse of WriteCampaignRecord. Throws FormatError on malformed files.
CampaignRecord ReadCampaignRecord(const std::filesystem::path& dir);

// `dir` itself when it holds a campaign.json, otherwise every immediate
// subdirectory that does, in name order.
std::vector<CampaignRecord> LoadRecords(const std::filesystem::path& dir);

}  // namespace gtbench

#endif  // GTBENCH_ORCHESTRATOR_RECORD_H_
