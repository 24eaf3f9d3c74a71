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

#include "gtbench/orchestrator/record.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gtbench/common/errors.h"
#include "json.hpp"

namespace gtbench {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string FormatTime(double t) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

json TagList(const std::set<uint32_t>& ids,
             const std::vector<std::string>& tags) {
  json out = json::array();
  for (uint32_t id : ids) {
    out.push_back(id < tags.size() ? tags[id] : std::to_string(id));
  }
  return out;
}

std::set<uint32_t> IdsFromTags(const json& list,
                               const std::map<std::string, uint32_t>& ids) {
  std::set<uint32_t> out;
  for (const json& tag : list) {
    const auto it = ids.find(tag.get<std::string>());
    if (it == ids.end()) {
      throw FormatError("triage.json: unknown bug " + tag.dump());
    }
    out.insert(it->second);
  }
  return out;
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

size_t CampaignRecord::valid_trials() const {
  return static_cast<size_t>(std::count_if(
      trials.begin(), trials.end(), [](const TrialRecord& t) { return t.valid; }));
}

size_t CampaignRecord::invalid_trials() const {
  return trials.size() - valid_trials();
}

std::vector<BugTimes> BugTimesFromEvents(std::span<const BugEvent> events,
                                         uint32_t bug_count) {
  std::vector<BugTimes> out(bug_count);
  for (const BugEvent& e : events) {
    if (e.bug_id >= bug_count) continue;
    std::optional<double>& slot =
        e.kind == EventKind::kReach ? out[e.bug_id].reach : out[e.bug_id].trigger;
    if (!slot || e.time < *slot) slot = e.time;
  }
  return out;
}

void WriteCampaignRecord(const CampaignRecord& record, const fs::path& dir) {
  fs::create_directories(dir);
  json header = {
      {"fuzzer", record.fuzzer},
      {"target", record.target},
      {"duration_s", record.duration_s},
      {"poll_interval_s", record.poll_interval_s},
      {"bug_tags", record.bug_tags},
      {"trials_requested", record.trials.size()},
      {"valid_trials", record.valid_trials()},
  };
  json invalid = json::array();
  json trials = json::array();
  for (const TrialRecord& t : record.trials) {
    trials.push_back({{"trial_id", t.trial_id},
                      {"rng_seed", t.rng_seed},
                      {"valid", t.valid},
                      {"executions", t.executions},
                      {"wall_s", t.wall_s},
                      {"crash_count", t.crash_count}});
    if (!t.valid) {
      invalid.push_back({{"trial_id", t.trial_id}, {"reason", t.invalid_reason}});
    }
  }
  header["invalid_trials"] = invalid;
  header["trials"] = trials;
  WriteText(dir / "campaign.json", header.dump(2) + "\n");

  std::ostringstream csv;
  csv << "trial_id,bug_id,event,time_s,censored\n";
  for (const TrialRecord& t : record.trials) {
    if (!t.valid) continue;
    for (size_t id = 0; id < t.bugs.size(); ++id) {
      const std::string& tag = record.bug_tags.at(id);
      const BugTimes& b = t.bugs[id];
      for (const auto& [code, time] :
           {std::pair{'R', b.reach}, std::pair{'T', b.trigger}}) {
        csv << t.trial_id << ',' << tag << ',' << code << ','
            << FormatTime(time.value_or(record.duration_s)) << ','
            << (time ? 0 : 1) << '\n';
      }
    }
  }
  WriteText(dir / "events.csv", csv.str());

  json triage = json::array();
  for (const TrialRecord& t : record.trials) {
    if (!t.valid) continue;
    json unknown = json::array();
    for (const UnknownCrash& u : t.triage.unknown) {
      unknown.push_back({{"name", u.name}, {"exit", u.exit}});
    }
    triage.push_back(
        {{"trial_id", t.trial_id},
         {"detected", TagList(t.triage.detected, record.bug_tags)},
         {"triggered_undetected",
          TagList(t.triage.triggered_undetected, record.bug_tags)},
         {"unknown", unknown},
         {"partial", t.triage.partial},
         {"errors", t.triage.errors}});
  }
  WriteText(dir / "triage.json", json{{"trials", triage}}.dump(2) + "\n");
}

CampaignRecord ReadCampaignRecord(const fs::path& dir) {
  CampaignRecord record;
  std::map<uint32_t, size_t> index;  // trial id -> position
  std::map<std::string, uint32_t> bug_ids;
  try {
    const json header = ReadJson(dir / "campaign.json");
    record.fuzzer = header.at("fuzzer").get<std::string>();
    record.target = header.at("target").get<std::string>();
    record.duration_s = header.at("duration_s").get<double>();
    record.poll_interval_s = header.at("poll_interval_s").get<double>();
    record.bug_tags = header.at("bug_tags").get<std::vector<std::string>>();
    std::map<uint32_t, std::string> reasons;
    for (const json& inv : header.at("invalid_trials")) {
      reasons[inv.at("trial_id").get<uint32_t>()] =
          inv.at("reason").get<std::string>();
    }
    for (const json& j : header.at("trials")) {
      TrialRecord t;
      t.trial_id = j.at("trial_id").get<uint32_t>();
      t.rng_seed = j.at("rng_seed").get<uint64_t>();
      t.valid = j.at("valid").get<bool>();
      t.executions = j.at("executions").get<uint64_t>();
      t.wall_s = j.at("wall_s").get<double>();
      t.crash_count = j.at("crash_count").get<size_t>();
      if (!t.valid) t.invalid_reason = reasons[t.trial_id];
      index[t.trial_id] = record.trials.size();
      record.trials.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw FormatError((dir / "campaign.json").string() + ": " + e.what());
  }
  for (uint32_t id = 0; id < record.bug_tags.size(); ++id) {
    bug_ids[record.bug_tags[id]] = id;
  }

  // Every (valid trial, bug) pair must appear exactly once per event kind.
  std::map<std::pair<size_t, uint32_t>, std::array<int, 2>> seen;
  std::ifstream csv(dir / "events.csv");
  if (!csv) throw FormatError("cannot read " + (dir / "events.csv").string());
  std::string line;
  std::getline(csv, line);
  if (line != "trial_id,bug_id,event,time_s,censored") {
    throw FormatError("events.csv: unexpected header '" + line + "'");
  }
  for (TrialRecord& t : record.trials) {
    if (t.valid) t.bugs.resize(record.bug_tags.size());
  }
  int line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsv(line);
    const std::string where = "events.csv line " + std::to_string(line_no);
    if (f.size() != 5) throw FormatError(where + ": expected 5 fields");
    uint32_t trial_id = 0;
    try {
      trial_id = static_cast<uint32_t>(std::stoul(f[0]));
    } catch (const std::exception&) {
      throw FormatError(where + ": bad trial id");
    }
    const auto ti = index.find(trial_id);
    const auto bi = bug_ids.find(f[1]);
    if (ti == index.end() || !record.trials[ti->second].valid) {
      throw FormatError(where + ": unknown or invalid trial");
    }
    if (bi == bug_ids.end()) throw FormatError(where + ": unknown bug");
    if (f[2] != "R" && f[2] != "T") throw FormatError(where + ": bad event");
    if (f[4] != "0" && f[4] != "1") throw FormatError(where + ": bad censored");
    double time = 0;
    try {
      time = std::stod(f[3]);
    } catch (const std::exception&) {
      throw FormatError(where + ": bad time");
    }
    const int kind = f[2] == "R" ? 0 : 1;
    if (++seen[{ti->second, bi->second}][kind] > 1) {
      throw FormatError(where + ": duplicate entry");
    }
    BugTimes& b = record.trials[ti->second].bugs[bi->second];
    std::optional<double>& slot = kind == 0 ? b.reach : b.trigger;
    if (f[4] == "0") slot = time;
  }
  for (size_t i = 0; i < record.trials.size(); ++i) {
    if (!record.trials[i].valid) continue;
    for (uint32_t id = 0; id < record.bug_tags.size(); ++id) {
      const auto it = seen.find({i, id});
      if (it == seen.end() || it->second[0] != 1 || it->second[1] != 1) {
        throw FormatError("events.csv: missing entries for trial " +
                          std::to_string(record.trials[i].trial_id) + " bug " +
                          record.bug_tags[id]);
      }
    }
  }

  if (fs::exists(dir / "triage.json")) {
    try {
      const json triage = ReadJson(dir / "triage.json");
      for (const json& j : triage.at("trials")) {
        const auto ti = index.find(j.at("trial_id").get<uint32_t>());
        if (ti == index.end()) continue;
        TriageResult& r = record.trials[ti->second].triage;
        r.detected = IdsFromTags(j.at("detected"), bug_ids);
        r.triggered_undetected =
            IdsFromTags(j.at("triggered_undetected"), bug_ids);
        for (const json& u : j.at("unknown")) {
          r.unknown.push_back({u.at("name").get<std::string>(),
                               u.at("exit").get<std::string>()});
        }
        r.partial = j.at("partial").get<bool>();
        r.errors = j.at("errors").get<std::vector<std::string>>();
      }
    } catch (const json::exception& e) {
      throw FormatError((dir / "triage.json").string() + ": " + e.what());
    }
  }
  return record;
}

std::vector<CampaignRecord> LoadRecords(const fs::path& dir) {
  if (fs::exists(dir / "campaign.json")) return {ReadCampaignRecord(dir)};
  if (!fs::is_directory(dir)) {
    throw InvalidArgument("no campaign records under " + dir.string());
  }
  std::vector<fs::path> subdirs;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "campaign.json")) {
      subdirs.push_back(e.path());
    }
  }
  std::sort(subdirs.begin(), subdirs.end());
  if (subdirs.empty()) {
    throw InvalidArgument("no campaign records under " + dir.string());
  }
  std::vector<CampaignRecord> out;
  for (const fs::path& p : subdirs) out.push_back(ReadCampaignRecord(p));
  return out;
}

}  // namespace gtbench
