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

#ifndef GTBENCH_ORCHESTRATOR_CONFIG_H_
#define GTBENCH_ORCHESTRATOR_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace gtbench {

// Campaign configuration, read from a flat `key = value` file. Lines starting
// with '#' are comments. Recognized keys:
//
//   target, fuzzer, trials, duration_s, poll_interval_s, seeds_dir, rng_seed,
//   workers, execs, cmplog, deterministic, memory_limit_mb, out_dir
struct CampaignConfig {
  std::string target;
  std::string fuzzer = "baseline";  // label used to group records
  uint32_t trials = 1;
  double duration_s = 60;
  double poll_interval_s = 5;
  std::filesystem::path seeds_dir;  // empty: the target's built-in seeds
  uint64_t rng_seed = 0;
  uint32_t workers = 1;
  uint64_t execs = 0;  // per-trial budget; > 0 switches to the virtual clock
  bool cmplog = false;
  bool deterministic = true;
  uint64_t memory_limit_mb = 0;  // recorded, not enforced
  std::filesystem::path out_dir;
};

// Throws InvalidArgument on unknown keys, malformed values or a config that
// fails Validate. Relative paths are kept as written.
CampaignConfig ParseConfig(std::string_view text);

// Like ParseConfig; relative seeds_dir/out_dir resolve against the file's
// directory.
CampaignConfig LoadConfig(const std::filesystem::path& path);

// trials >= 1, workers >= 1, 0 < poll_interval_s <= duration_s, non-empty
// target.
void Validate(const CampaignConfig& config);

std::string ConfigToString(const CampaignConfig& config);

}  // namespace gtbench

#endif  // GTBENCH_ORCHESTRATOR_CONFIG_H_
