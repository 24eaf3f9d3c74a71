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

#include "gtbench/analytics/survival_table.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

std::vector<Observation> Observations(const CampaignRecord& record,
                                      uint32_t bug_id, bool trigger) {
  std::vector<Observation> out;
  for (const TrialRecord& t : record.trials) {
    if (!t.valid) continue;
    if (bug_id >= t.bugs.size()) {
      throw InvalidArgument(fmt::format("trial {} has no bug {}", t.trial_id,
                                        bug_id));
    }
    const std::optional<double>& time =
        trigger ? t.bugs[bug_id].trigger : t.bugs[bug_id].reach;
    out.push_back({time.value_or(record.duration_s), time.has_value()});
  }
  return out;
}

struct Pooled {
  std::vector<std::vector<Observation>> reach;    // by bug id
  std::vector<std::vector<Observation>> trigger;
};

void MarkBest(SurvivalRow& row, bool trigger) {
  if (row.cells.size() < 2) return;
  std::string best_text;
  double best = 0;
  size_t best_index = 0;
  size_t best_count = 0;
  for (size_t i = 0; i < row.cells.size(); ++i) {
    const double v =
        trigger ? row.cells[i].mean_trigger : row.cells[i].mean_reach;
    const std::string text = FormatSurvivalTime(v);
    if (best_count == 0 || v < best) {
      if (best_count > 0 && text == best_text) {
        ++best_count;
      } else {
        best_count = 1;
      }
      best = v;
      best_text = text;
      best_index = i;
    } else if (text == best_text) {
      ++best_count;
    }
  }
  if (best_count == 1) {
    (trigger ? row.cells[best_index].best_trigger
             : row.cells[best_index].best_reach) = true;
  }
}

}  // namespace

std::string FormatSurvivalTime(double seconds) {
  if (seconds < 60) return fmt::format("{:.2f}s", seconds);
  if (seconds < 3600) return fmt::format("{:.2f}m", seconds / 60);
  return fmt::format("{:.2f}h", seconds / 3600);
}

std::vector<Observation> ReachObservations(const CampaignRecord& record,
                                           uint32_t bug_id) {
  return Observations(record, bug_id, false);
}

std::vector<Observation> TriggerObservations(const CampaignRecord& record,
                                             uint32_t bug_id) {
  return Observations(record, bug_id, true);
}

SurvivalTable BuildSurvivalTable(std::span<const CampaignRecord> records) {
  if (records.empty()) throw InvalidArgument("no campaign records");
  SurvivalTable table;
  table.duration_s = records.front().duration_s;
  // (target, fuzzer) -> pooled observations; target -> bug tags
  std::map<std::pair<std::string, std::string>, Pooled> pooled;
  std::map<std::string, std::vector<std::string>> tags;
  for (const CampaignRecord& r : records) {
    if (r.duration_s != table.duration_s) {
      throw InvalidArgument(fmt::format(
          "records mix trial durations ({}s and {}s)", table.duration_s,
          r.duration_s));
    }
    if (r.valid_trials() == 0) {
      throw InvalidArgument(fmt::format("{} on {} has no valid trial",
                                        r.fuzzer, r.target));
    }
    auto [it, inserted] = tags.emplace(r.target, r.bug_tags);
    if (!inserted && it->second != r.bug_tags) {
      throw InvalidArgument("records disagree on the bugs of " + r.target);
    }
    Pooled& p = pooled[{r.target, r.fuzzer}];
    p.reach.resize(r.bug_tags.size());
    p.trigger.resize(r.bug_tags.size());
    for (uint32_t id = 0; id < r.bug_tags.size(); ++id) {
      for (const Observation& o : ReachObservations(r, id)) {
        p.reach[id].push_back(o);
      }
      for (const Observation& o : TriggerObservations(r, id)) {
        p.trigger[id].push_back(o);
      }
    }
    if (std::find(table.fuzzers.begin(), table.fuzzers.end(), r.fuzzer) ==
        table.fuzzers.end()) {
      table.fuzzers.push_back(r.fuzzer);
    }
  }
  std::sort(table.fuzzers.begin(), table.fuzzers.end());

  for (const auto& [target, bug_tags] : tags) {
    for (uint32_t id = 0; id < bug_tags.size(); ++id) {
      SurvivalRow row;
      row.target = target;
      row.bug = bug_tags[id];
      for (const std::string& fuzzer : table.fuzzers) {
        const auto it = pooled.find({target, fuzzer});
        if (it == pooled.end()) continue;
        SurvivalCell cell;
        cell.fuzzer = fuzzer;
        const std::vector<Observation>& reach = it->second.reach[id];
        const std::vector<Observation>& trig = it->second.trigger[id];
        cell.trials = reach.size();
        double sum_r = 0, sum_t = 0;
        for (const Observation& o : reach) {
          sum_r += o.time;
          cell.reached_trials += o.observed ? 1 : 0;
        }
        for (const Observation& o : trig) {
          sum_t += o.time;
          cell.triggered_trials += o.observed ? 1 : 0;
        }
        cell.mean_reach = sum_r / static_cast<double>(reach.size());
        cell.mean_trigger = sum_t / static_cast<double>(trig.size());
        row.mean_reach += cell.mean_reach;
        row.mean_trigger += cell.mean_trigger;
        row.cells.push_back(cell);
      }
      row.mean_reach /= static_cast<double>(row.cells.size());
      row.mean_trigger /= static_cast<double>(row.cells.size());
      MarkBest(row, false);
      MarkBest(row, true);
      table.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const SurvivalRow& a, const SurvivalRow& b) {
                     return std::tie(a.mean_trigger, a.mean_reach, a.target,
                                     a.bug) < std::tie(b.mean_trigger,
                                                       b.mean_reach, b.target,
                                                       b.bug);
                   });
  return table;
}

std::string SurvivalTableCsv(const SurvivalTable& table) {
  std::string out =
      "target,bug,fuzzer,trials,reached_trials,triggered_trials,mean_reach_s,"
      "mean_trigger_s,reach,trigger,best_reach,best_trigger\n";
  for (const SurvivalRow& row : table.rows) {
    for (const SurvivalCell& c : row.cells) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", row.target,
                         row.bug, c.fuzzer, c.trials, c.reached_trials,
                         c.triggered_trials, c.mean_reach, c.mean_trigger,
                         FormatSurvivalTime(c.mean_reach),
                         FormatSurvivalTime(c.mean_trigger),
                         c.best_reach ? 1 : 0, c.best_trigger ? 1 : 0);
    }
    out += fmt::format("{},{},all,,,,{},{},{},{},,\n", row.target, row.bug,
                       row.mean_reach, row.mean_trigger,
                       FormatSurvivalTime(row.mean_reach),
                       FormatSurvivalTime(row.mean_trigger));
  }
  return out;
}

}  // namespace gtbench
