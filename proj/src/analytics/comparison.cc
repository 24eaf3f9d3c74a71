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

#include "gtbench/analytics/comparison.h"

#include <cmath>
#include <map>

#include <fmt/format.h>

#include "gtbench/common/errors.h"

namespace gtbench {

MeanSd ComputeMeanSd(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("mean of an empty list");
  MeanSd out;
  for (double v : values) out.mean += v;
  const auto n = static_cast<double>(values.size());
  out.mean /= n;
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / (n - 1));
  }
  return out;
}

std::vector<double> TriggeredCounts(const CampaignRecord& record) {
  std::vector<double> out;
  for (const TrialRecord& t : record.trials) {
    if (!t.valid) continue;
    size_t n = 0;
    for (const BugTimes& b : t.bugs) n += b.trigger ? 1 : 0;
    out.push_back(static_cast<double>(n));
  }
  return out;
}

std::vector<BugCountStats> BugCountStatsFor(
    std::span<const CampaignRecord> records) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> pooled;
  for (const CampaignRecord& r : records) {
    std::vector<double>& counts = pooled[{r.fuzzer, r.target}];
    for (double c : TriggeredCounts(r)) counts.push_back(c);
  }
  std::vector<BugCountStats> out;
  for (auto& [key, counts] : pooled) {
    if (counts.empty()) {
      throw InvalidArgument(fmt::format("{} on {} has no valid trial",
                                        key.first, key.second));
    }
    BugCountStats s;
    s.fuzzer = key.first;
    s.target = key.second;
    s.stats = ComputeMeanSd(counts);
    s.counts = std::move(counts);
    out.push_back(std::move(s));
  }
  return out;
}

std::string BugCountsCsv(std::span<const BugCountStats> stats) {
  std::string out = "fuzzer,target,trials,mean,sd,counts\n";
  for (const BugCountStats& s : stats) {
    out += fmt::format("{},{},{},{},{},{}\n", s.fuzzer, s.target,
                       s.counts.size(), s.stats.mean, s.stats.sd,
                       fmt::join(s.counts, " "));
  }
  return out;
}

std::vector<SignificanceCell> SignificanceMatrix(
    std::span<const BugCountStats> stats) {
  std::vector<SignificanceCell> out;
  for (const BugCountStats& a : stats) {
    for (const BugCountStats& b : stats) {
      if (a.target != b.target || a.fuzzer == b.fuzzer) continue;
      out.push_back({a.target, a.fuzzer, b.fuzzer,
                     MannWhitneyU(a.counts, b.counts)});
    }
  }
  return out;
}

std::string SignificanceCsv(std::span<const SignificanceCell> cells) {
  std::string out = "target,fuzzer_a,fuzzer_b,u,p,method,identical,significant\n";
  for (const SignificanceCell& c : cells) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", c.target, c.fuzzer_a,
                       c.fuzzer_b, c.test.u, c.test.p,
                       RankMethodName(c.test.method), c.test.identical ? 1 : 0,
                       c.test.significant() ? 1 : 0);
  }
  return out;
}

}  // namespace gtbench
