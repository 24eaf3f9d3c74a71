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

#ifndef GTBENCH_ORCHESTRATOR_TRIALS_H_
#define GTBENCH_ORCHESTRATOR_TRIALS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gtbench/common/bytes.h"
#include "gtbench/fuzzer/campaign.h"
#include "gtbench/orchestrator/config.h"
#include "gtbench/orchestrator/record.h"
#include "gtbench/targets/target.h"

namespace gtbench {

struct TrialOutput {
  TrialRecord record;  // triage not yet run
  std::vector<CrashEntry> crashes;
};

// One fuzzing trial in the calling process, rng seed = base + trial index,
// with the polling monitor attached.
TrialOutput RunTrial(const CampaignConfig& config, const Target& target,
                     std::span<const Bytes> seeds, uint32_t trial_id);

// Seeds from config.seeds_dir (regular files, name order) or the target's
// built-in seeds. Throws InvalidArgument when the directory has none.
std::vector<Bytes> LoadSeeds(const CampaignConfig& config,
                             const Target& target);

// Runs config.trials trials as child processes, at most config.workers at a
// time. Each child writes its trial under <out_dir>/trials/<id>/; a child
// that fails marks its trial invalid with the reason. Crashes are then
// triaged in this process. When out_dir is set, the record is also written
// there.
CampaignRecord RunTrials(const CampaignConfig& config, const Target& target,
                         std::span<const Bytes> seeds);

// Resolves the target by name and loads seeds, then RunTrials.
CampaignRecord RunCampaign(const CampaignConfig& config);

}  // namespace gtbench

#endif  // GTBENCH_ORCHESTRATOR_TRIALS_H_
