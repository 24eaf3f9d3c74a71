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

#include "gtbench/analytics/analyze.h"

#include <fstream>
#include <map>
#include <string>

#include "gtbench/analytics/comparison.h"
#include "gtbench/analytics/plots.h"
#include "gtbench/analytics/survival_table.h"
#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

namespace fs = std::filesystem;

void Write(const fs::path& path, const std::string& text,
           std::vector<fs::path>& written) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
  written.push_back(path);
}

}  // namespace

std::vector<fs::path> Analyze(std::span<const CampaignRecord> records,
                              const fs::path& out, bool plots) {
  fs::create_directories(out);
  std::vector<fs::path> written;
  const SurvivalTable table = BuildSurvivalTable(records);
  Write(out / "survival_table.csv", SurvivalTableCsv(table), written);
  const std::vector<BugCountStats> counts = BugCountStatsFor(records);
  Write(out / "bug_counts.csv", BugCountsCsv(counts), written);
  Write(out / "signif_matrix.csv", SignificanceCsv(SignificanceMatrix(counts)),
        written);
  if (!plots) return written;

  // (target, bug tag) -> per-fuzzer pooled observations
  struct Pool {
    std::vector<Observation> reach, trigger;
  };
  std::map<std::pair<std::string, std::string>, std::map<std::string, Pool>>
      pools;
  for (const CampaignRecord& r : records) {
    for (uint32_t id = 0; id < r.bug_tags.size(); ++id) {
      Pool& p = pools[{r.target, r.bug_tags[id]}][r.fuzzer];
      for (const Observation& o : ReachObservations(r, id)) p.reach.push_back(o);
      for (const Observation& o : TriggerObservations(r, id)) {
        p.trigger.push_back(o);
      }
    }
  }
  for (const auto& [key, by_fuzzer] : pools) {
    std::vector<CurveSeries> series;
    for (const auto& [fuzzer, pool] : by_fuzzer) {
      series.push_back(
          {fuzzer, KaplanMeier(pool.reach), KaplanMeier(pool.trigger)});
    }
    Write(out / ("survival_" + key.second + ".svg"),
          SurvivalSvg(key.first + " " + key.second, table.duration_s, series),
          written);
  }
  return written;
}

}  // namespace gtbench
