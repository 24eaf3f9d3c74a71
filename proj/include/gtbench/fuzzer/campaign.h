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

#ifndef GTBENCH_FUZZER_CAMPAIGN_H_
#define GTBENCH_FUZZER_CAMPAIGN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "gtbench/canary/registry.h"
#include "gtbench/common/bytes.h"
#include "gtbench/fuzzer/mutator.h"
#include "gtbench/targets/target.h"

namespace gtbench {

struct QueueEntry {
  Bytes input;
  double discovery_time = 0;  // seconds since campaign start
  uint64_t discovery_exec = 0;
  uint64_t signature = 0;     // CoverageSignature of its run
  bool favored = false;
  bool det_done = false;
  std::vector<uint32_t> hit_indices;
};

struct CrashEntry {
  Bytes input;
  ExecExit exit;
  uint64_t exec = 0;
  double time = 0;
};

struct CampaignStats {
  uint64_t executions = 0;
  double elapsed_s = 0;        // campaign clock (virtual when configured)
  double wall_s = 0;
  double execs_per_second = 0;  // executions / wall_s
  size_t queue_size = 0;
  size_t crash_count = 0;
  size_t coverage_bits = 0;
  uint64_t cycles = 0;
};

struct CampaignOptions {
  // Budgets. With both set, the campaign clock is virtual: execution i
  // (0-based) happens at (i + 1) * max_seconds / max_execs, which makes
  // timestamps reproducible. With only max_seconds the wall clock is used.
  uint64_t max_execs = 0;
  double max_seconds = 0;
  uint64_t rng_seed = 0;
  bool cmplog = false;
  bool deterministic = true;
  uint32_t havoc_rounds = 256;
  uint32_t splice_rounds = 32;
  size_t max_input_size = kDefaultMaxInputSize;
  ExecMode mode = ExecMode::kFatal;
};

struct ExecEvent {
  uint64_t exec = 0;  // 0-based execution index
  double time = 0;    // campaign clock after this execution
  const BugRegistry& registry;
  ExecExit exit;
};

// Invoked after every execution, before the registry is reset again.
using ExecObserver = std::function<void(const ExecEvent&)>;

struct CampaignResult {
  std::vector<QueueEntry> queue;
  std::vector<CrashEntry> crashes;
  CampaignStats stats;
};

// Coverage-guided loop: seeds enter the queue, entries are scheduled
// round-robin with favored ones first, each gets its deterministic stages
// once, then havoc and splice rounds. Inputs with new coverage join the
// queue; abnormal exits with new crash coverage or a new bug id are saved.
//
// Throws InvalidArgument without seeds or without any budget, and
// CampaignError when the target fails outside the canary/fault protocol.
CampaignResult FuzzCampaign(const Target& target, std::span<const Bytes> seeds,
                            const CampaignOptions& options,
                            const ExecObserver& observer = {});

// Writes queue/, crashes/ and stats.json under `dir`.
void WriteCampaignOutput(const CampaignResult& result,
                         const std::filesystem::path& dir);

}  // namespace gtbench

#endif  // GTBENCH_FUZZER_CAMPAIGN_H_
