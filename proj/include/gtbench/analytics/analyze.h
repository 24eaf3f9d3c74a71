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

#ifndef GTBENCH_ANALYTICS_ANALYZE_H_
#define GTBENCH_ANALYTICS_ANALYZE_H_

#include <filesystem>
#include <span>
#include <vector>

#include "gtbench/orchestrator/record.h"

namespace gtbench {

// Writes survival_table.csv, signif_matrix.csv, bug_counts.csv and, with
// `plots`, survival_<bug>.svg for every bug. Returns the files written.
std::vector<std::filesystem::path> Analyze(
    std::span<const CampaignRecord> records, const std::filesystem::path& out,
    bool plots);

}  // namespace gtbench

#endif  // GTBENCH_ANALYTICS_ANALYZE_H_
