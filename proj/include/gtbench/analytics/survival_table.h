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

#ifndef GTBENCH_ANALYTICS_SURVIVAL_TABLE_H_
#define GTBENCH_ANALYTICS_SURVIVAL_TABLE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gtbench/analytics/kaplan_meier.h"
#include "gtbench/orchestrator/record.h"

namespace gtbench {

// "12.50s" below a minute, "3.25m" below an hour, "24.00h" otherwise.
std::string FormatSurvivalTime(double seconds);

// Per-trial observations for one bug: reach or trigger time, censored at the
// duration when missing. Invalid trials are skipped.
std::vector<Observation> ReachObservations(const CampaignRecord& record,
                                           uint32_t bug_id);
std::vector<Observation> TriggerObservations(const CampaignRecord& record,
                                             uint32_t bug_id);

struct SurvivalCell {
  std::string fuzzer;
  size_t trials = 0;
  size_t reached_trials = 0;
  size_t triggered_trials = 0;
  double mean_reach = 0;    // censored entries count as the duration
  double mean_trigger = 0;
  bool best_reach = false;  // unique fastest fuzzer for this bug
  bool best_trigger = false;
};

struct SurvivalRow {
  std::string target;
  std::string bug;
  std::vector<SurvivalCell> cells;  // one per fuzzer, in table order
  double mean_reach = 0;            // mean of the per-fuzzer means
  double mean_trigger = 0;
};

struct SurvivalTable {
  double duration_s = 0;
  std::vector<std::string> fuzzers;  // sorted
  std::vector<SurvivalRow> rows;     // ascending mean trigger time
};

// Rows are (target, bug) pairs, ordered by cross-fuzzer mean trigger time
// (then mean reach time, then name). A fuzzer is marked best in a cell when
// its displayed time is strictly the smallest among at least two fuzzers.
// Throws InvalidArgument when durations differ, when there are no records,
// or when a record has no valid trial.
SurvivalTable BuildSurvivalTable(std::span<const CampaignRecord> records);

// Long format: one line per (target, bug, fuzzer) plus an "all" line per row.
std::string SurvivalTableCsv(const SurvivalTable& table);

}  // namespace gtbench

#endif  // GTBENCH_ANALYTICS_SURVIVAL_TABLE_H_
