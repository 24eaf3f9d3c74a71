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

#include "gtbench/orchestrator/trials.h"

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "gtbench/common/errors.h"
#include "gtbench/orchestrator/monitor.h"
#include "gtbench/targets/suite.h"
#include "json.hpp"

namespace gtbench {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kChildFailureExit = 3;

fs::path TrialDir(const fs::path& out_dir, uint32_t trial_id) {
  return out_dir / "trials" / std::to_string(trial_id);
}

void WriteTrial(const TrialOutput& out, const std::vector<BugEvent>& events,
                const fs::path& dir) {
  fs::create_directories(dir / "crashes");
  json ev = json::array();
  for (const BugEvent& e : events) {
    ev.push_back({e.bug_id, std::string(1, EventKindCode(e.kind)), e.time});
  }
  const TrialRecord& r = out.record;
  const json doc = {{"trial_id", r.trial_id},   {"rng_seed", r.rng_seed},
                    {"executions", r.executions}, {"wall_s", r.wall_s},
                    {"crash_count", r.crash_count}, {"events", ev}};
  for (size_t i = 0; i < out.crashes.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "id_%06zu_bug_%u", i,
                  out.crashes[i].exit.bug_id);
    WriteFileBytes(dir / "crashes" / name, out.crashes[i].input);
  }
  // trial.json last: its presence marks a complete trial.
  const fs::path tmp = dir / "trial.json.tmp";
  {
    std::ofstream f(tmp);
    f << doc.dump() << "\n";
    if (!f) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, dir / "trial.json");
}

// Reads a finished child's trial; throws with a reason on any problem.
TrialRecord ReadTrial(const fs::path& dir, uint32_t bug_count) {
  std::ifstream in(dir / "trial.json");
  if (!in) throw FormatError("trial.json missing");
  TrialRecord r;
  std::vector<BugEvent> events;
  try {
    const json doc = json::parse(in);
    r.trial_id = doc.at("trial_id").get<uint32_t>();
    r.rng_seed = doc.at("rng_seed").get<uint64_t>();
    r.executions = doc.at("executions").get<uint64_t>();
    r.wall_s = doc.at("wall_s").get<double>();
    r.crash_count = doc.at("crash_count").get<size_t>();
    for (const json& e : doc.at("events")) {
      const std::string kind = e.at(1).get<std::string>();
      events.push_back({e.at(0).get<uint32_t>(),
                        kind == "R" ? EventKind::kReach : EventKind::kTrigger,
                        e.at(2).get<double>()});
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("trial.json malformed: ") + e.what());
  }
  r.bugs = BugTimesFromEvents(events, bug_count);
  return r;
}

std::vector<NamedInput> ReadCrashes(const fs::path& dir) {
  std::vector<NamedInput> out;
  if (!fs::is_directory(dir)) return out;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out.push_back({e.path().filename().string(), ReadFileBytes(e.path())});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const NamedInput& a, const NamedInput& b) {
              return a.name < b.name;
            });
  return out;
}

std::string ReadReason(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string DescribeStatus(int status) {
  if (WIFEXITED(status)) {
    return "trial process exited with status " +
           std::to_string(WEXITSTATUS(status));
  }
  if (WIFSIGNALED(status)) {
    return "trial process killed by signal " + std::to_string(WTERMSIG(status));
  }
  return "trial process ended abnormally";
}

[[noreturn]] void RunChild(const CampaignConfig& config, const Target& target,
                           std::span<const Bytes> seeds, uint32_t trial_id,
                           const fs::path& dir) {
  int code = 0;
  try {
    fs::create_directories(dir);
    const TrialOutput out = RunTrial(config, target, seeds, trial_id);
    std::vector<BugEvent> events;
    for (uint32_t id = 0; id < out.record.bugs.size(); ++id) {
      const BugTimes& b = out.record.bugs[id];
      if (b.reach) events.push_back({id, EventKind::kReach, *b.reach});
      if (b.trigger) events.push_back({id, EventKind::kTrigger, *b.trigger});
    }
    WriteTrial(out, events, dir);
  } catch (const std::exception& e) {
    std::ofstream(dir / "error.txt") << e.what() << "\n";
    code = kChildFailureExit;
  } catch (...) {
    std::ofstream(dir / "error.txt") << "unknown exception\n";
    code = kChildFailureExit;
  }
  std::fflush(nullptr);
  _exit(code);
}

}  // namespace

TrialOutput RunTrial(const CampaignConfig& config, const Target& target,
                     std::span<const Bytes> seeds, uint32_t trial_id) {
  CampaignOptions options;
  options.max_execs = config.execs;
  options.max_seconds = config.duration_s;
  options.rng_seed = config.rng_seed + trial_id;
  options.cmplog = config.cmplog;
  options.deterministic = config.deterministic;
  options.mode = ExecMode::kFatal;

  PollingMonitor monitor(target.bug_count(), config.poll_interval_s,
                         config.duration_s);
  CampaignResult result =
      FuzzCampaign(target, seeds, options, [&](const ExecEvent& e) {
        monitor.Observe(e.time, e.registry);
      });
  monitor.Finish();

  TrialOutput out;
  out.record.trial_id = trial_id;
  out.record.rng_seed = options.rng_seed;
  out.record.executions = result.stats.executions;
  out.record.wall_s = result.stats.wall_s;
  out.record.crash_count = result.crashes.size();
  out.record.bugs = BugTimesFromEvents(monitor.events(), target.bug_count());
  out.crashes = std::move(result.crashes);
  return out;
}

std::vector<Bytes> LoadSeeds(const CampaignConfig& config,
                             const Target& target) {
  if (config.seeds_dir.empty()) return target.Seeds();
  if (!fs::is_directory(config.seeds_dir)) {
    throw InvalidArgument("seeds_dir " + config.seeds_dir.string() +
                          " is not a directory");
  }
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(config.seeds_dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw InvalidArgument("no seeds in " + config.seeds_dir.string());
  }
  std::vector<Bytes> seeds;
  for (const fs::path& p : files) seeds.push_back(ReadFileBytes(p));
  return seeds;
}

CampaignRecord RunTrials(const CampaignConfig& config, const Target& target,
                         std::span<const Bytes> seeds) {
  Validate(config);
  if (seeds.empty()) throw InvalidArgument("campaign needs >= 1 seed");

  fs::path work = config.out_dir;
  bool temporary = false;
  if (work.empty()) {
    std::string tmpl = (fs::temp_directory_path() / "gtbench-XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) {
      throw CampaignError("cannot create a temporary directory");
    }
    work = tmpl;
    temporary = true;
  }

  CampaignRecord record;
  record.fuzzer = config.fuzzer;
  record.target = std::string(target.name());
  record.duration_s = config.duration_s;
  record.poll_interval_s = config.poll_interval_s;
  for (const BugDescriptor& b : target.bugs()) {
    record.bug_tags.emplace_back(b.tag);
  }

  std::map<pid_t, uint32_t> running;
  std::map<uint32_t, int> statuses;
  auto reap_one = [&] {
    int status = 0;
    const pid_t pid = waitpid(-1, &status, 0);
    if (pid < 0) throw CampaignError("waitpid failed");
    const auto it = running.find(pid);
    if (it == running.end()) return;
    statuses[it->second] = status;
    running.erase(it);
  };
  for (uint32_t trial = 0; trial < config.trials; ++trial) {
    while (running.size() >= config.workers) reap_one();
    const fs::path dir = TrialDir(work, trial);
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::fflush(nullptr);
    const pid_t pid = fork();
    if (pid < 0) {
      statuses[trial] = -1;
      continue;
    }
    if (pid == 0) RunChild(config, target, seeds, trial, dir);
    running[pid] = trial;
  }
  while (!running.empty()) reap_one();

  for (uint32_t trial = 0; trial < config.trials; ++trial) {
    const fs::path dir = TrialDir(work, trial);
    const int status = statuses[trial];
    TrialRecord t;
    t.trial_id = trial;
    t.rng_seed = config.rng_seed + trial;
    std::string reason;
    if (status == -1) {
      reason = "fork failed";
    } else if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      reason = DescribeStatus(status);
      const std::string detail = ReadReason(dir / "error.txt");
      if (!detail.empty()) reason += ": " + detail;
    } else {
      try {
        t = ReadTrial(dir, target.bug_count());
        const std::vector<NamedInput> crashes = ReadCrashes(dir / "crashes");
        t.triage = ReplayTriage(target, crashes);
      } catch (const std::exception& e) {
        reason = e.what();
      }
    }
    if (!reason.empty()) {
      t.valid = false;
      t.invalid_reason = reason;
      t.bugs.clear();
    }
    record.trials.push_back(std::move(t));
  }

  if (temporary) {
    std::error_code ec;
    fs::remove_all(work, ec);
  } else {
    WriteCampaignRecord(record, work);
  }
  return record;
}

CampaignRecord RunCampaign(const CampaignConfig& config) {
  const Target& target = GetTarget(config.target);
  const std::vector<Bytes> seeds = LoadSeeds(config, target);
  return RunTrials(config, target, seeds);
}

}  // namespace gtbench
