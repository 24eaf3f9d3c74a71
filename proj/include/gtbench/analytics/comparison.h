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

#ifndef GTBENCH_ANALYTICS_COMPARISON_H_
#define GTBENCH_ANALYTICS_COMPARISON_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gtbench/analytics/mann_whitney.h"
#include "gtbench/orchestrator/record.h"

namespace gtbench {

struct MeanSd {
  double mean = 0;
  double sd = 0;  // sample standard deviation (n - 1); 0 for one value
};

// Throws InvalidArgument for an empty list.
MeanSd ComputeMeanSd(std::span<const double> values);

// Distinct bugs triggered in each valid trial, in trial order.
std::vector<double> TriggeredCounts(const CampaignRecord& record);

struct BugCountStats {
  std::string fuzzer;
  std::string target;
  std::vector<double> counts;
  MeanSd stats;
};

// One entry per (fuzzer, target), records for the same pair pooled. Throws
// InvalidArgument when a pair has no valid trial.
std::vector<BugCountStats> BugCountStatsFor(
    std::span<const CampaignRecord> records);

std::string BugCountsCsv(std::span<const BugCountStats> stats);

struct SignificanceCell {
  std::string target;
  std::string fuzzer_a;
  std::string fuzzer_b;
  RankTestResult test;
};

// Mann-Whitney test on per-trial triggered-bug counts for every ordered pair
// of distinct fuzzers on each target.
std::vector<SignificanceCell> SignificanceMatrix(
    std::span<const BugCountStats> stats);

std::string SignificanceCsv(std::span<const SignificanceCell> cells);

}  // namespace gtbench

#endif  // GTBENCH_ANALYTICS_COMPARISON_H_
