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

#include "gtbench/fuzzer/campaign.h"

#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <memory>
#include <set>
#include <string>

#include "gtbench/common/errors.h"
#include "gtbench/fuzzer/coverage.h"
#include "json.hpp"

namespace gtbench {

namespace {

using Clock = std::chrono::steady_clock;

class Campaign {
 public:
  Campaign(const Target& target, const CampaignOptions& options,
           const ExecObserver& observer)
      : target_(target),
        options_(options),
        observer_(observer),
        rng_(options.rng_seed),
        registry_(BugRegistry::CreateInMemory(target.bug_count(),
                                              CanaryMode::kFatal)),
        run_(std::make_unique<CoverageMap>()),
        global_(std::make_unique<CoverageMap>()),
        crash_global_(std::make_unique<CoverageMap>()) {
    top_rated_.fill(-1);
  }

  CampaignResult Run(std::span<const Bytes> seeds) {
    start_ = Clock::now();
    for (const Bytes& seed : seeds) {
      if (!Execute(seed, /*force_queue=*/true)) break;
    }
    while (!Done() && !result_.queue.empty()) {
      Cull();
      std::vector<size_t> order;
      for (size_t i = 0; i < result_.queue.size(); ++i) {
        if (result_.queue[i].favored) order.push_back(i);
      }
      for (size_t i = 0; i < result_.queue.size(); ++i) {
        if (!result_.queue[i].favored) order.push_back(i);
      }
      for (size_t i : order) {
        if (!FuzzEntry(i)) break;
      }
      ++result_.stats.cycles;
    }
    CampaignStats& stats = result_.stats;
    stats.executions = execs_;
    stats.wall_s = WallSeconds();
    stats.elapsed_s = virtual_clock() ? ExecTime(execs_ == 0 ? 0 : execs_ - 1)
                                      : stats.wall_s;
    stats.execs_per_second =
        stats.wall_s > 0 ? static_cast<double>(execs_) / stats.wall_s : 0;
    stats.queue_size = result_.queue.size();
    stats.crash_count = result_.crashes.size();
    stats.coverage_bits = CountClassBits(*global_);
    return std::move(result_);
  }

 private:
  bool virtual_clock() const {
    return options_.max_execs > 0 && options_.max_seconds > 0;
  }

  double WallSeconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  double ExecTime(uint64_t exec) const {
    if (virtual_clock()) {
      return static_cast<double>(exec + 1) * options_.max_seconds /
             static_cast<double>(options_.max_execs);
    }
    return WallSeconds();
  }

  bool Done() const {
    if (options_.max_execs > 0 && execs_ >= options_.max_execs) return true;
    if (!virtual_clock() && options_.max_seconds > 0 &&
        WallSeconds() >= options_.max_seconds) {
      return true;
    }
    return false;
  }

  // Returns false once the budget is spent; nothing is executed then.
  bool Execute(const Bytes& input, bool force_queue = false) {
    if (Done()) return false;
    run_->Clear();
    ExecOptions exec_options;
    exec_options.coverage = run_.get();
    exec_options.cmplog = options_.cmplog;
    ExecExit exit;
    try {
      exit = RunOnce(target_, input, options_.mode, registry_, exec_options);
    } catch (const std::exception& e) {
      throw CampaignError(std::string("target ") + std::string(target_.name()) +
                          " failed: " + e.what());
    }
    const uint64_t exec = execs_++;
    const double time = ExecTime(exec);
    if (observer_) observer_(ExecEvent{exec, time, registry_, exit});

    if (exit.abnormal()) {
      const bool new_cov = IsInteresting(*run_, *crash_global_);
      const bool new_bug = seen_bugs_.insert(exit.bug_id).second;
      if (new_cov || new_bug) {
        result_.crashes.push_back(CrashEntry{input, exit, exec, time});
      }
      if (force_queue) AddToQueue(input, exec, time);
      return true;
    }
    const bool interesting = IsInteresting(*run_, *global_);
    if (interesting || force_queue) AddToQueue(input, exec, time);
    return true;
  }

  void AddToQueue(const Bytes& input, uint64_t exec, double time) {
    QueueEntry entry;
    entry.input = input;
    entry.discovery_time = time;
    entry.discovery_exec = exec;
    entry.signature = CoverageSignature(*run_);
    for (uint32_t i = 0; i < kCoverageMapSize; ++i) {
      if (run_->bytes[i] != 0) entry.hit_indices.push_back(i);
    }
    const auto id = static_cast<int32_t>(result_.queue.size());
    for (uint32_t i : entry.hit_indices) {
      int32_t& top = top_rated_[i];
      if (top < 0 || result_.queue[static_cast<size_t>(top)].input.size() >
                         input.size()) {
        top = id;
      }
    }
    result_.queue.push_back(std::move(entry));
  }

  // Greedy cover: favored entries together hit every index seen so far,
  // preferring the smallest input per index.
  void Cull() {
    for (QueueEntry& e : result_.queue) e.favored = false;
    std::vector<bool> covered(kCoverageMapSize, false);
    for (uint32_t i = 0; i < kCoverageMapSize; ++i) {
      const int32_t top = top_rated_[i];
      if (top < 0 || covered[i]) continue;
      QueueEntry& e = result_.queue[static_cast<size_t>(top)];
      e.favored = true;
      for (uint32_t j : e.hit_indices) covered[j] = true;
    }
  }

  bool FuzzEntry(size_t index) {
    const Bytes base = result_.queue[index].input;
    if (options_.deterministic && !result_.queue[index].det_done) {
      bool budget_left = true;
      ForEachDeterministicStage(base.size(), [&](const MutationStage& s) {
        budget_left = Execute(Mutate(base, rng_, s, options_.max_input_size));
        return budget_left;
      });
      if (!budget_left) return false;
      result_.queue[index].det_done = true;
    }
    for (uint32_t r = 0; r < options_.havoc_rounds; ++r) {
      const auto n_ops = static_cast<uint32_t>(1u << (1 + rng_.Below(7)));
      if (!Execute(Mutate(base, rng_, stage::Havoc{n_ops},
                          options_.max_input_size))) {
        return false;
      }
    }
    const size_t size = result_.queue.size();
    if (size < 2) return true;
    for (uint32_t r = 0; r < options_.splice_rounds; ++r) {
      size_t other = rng_.Below(size - 1);
      if (other >= index) ++other;
      const Bytes partner = result_.queue[other].input;
      const Bytes spliced = Mutate(base, rng_, stage::Splice{partner},
                                   options_.max_input_size);
      const auto n_ops = static_cast<uint32_t>(1u << (1 + rng_.Below(7)));
      if (!Execute(Mutate(spliced, rng_, stage::Havoc{n_ops},
                          options_.max_input_size))) {
        return false;
      }
    }
    return true;
  }

  const Target& target_;
  const CampaignOptions& options_;
  const ExecObserver& observer_;
  Rng rng_;
  BugRegistry registry_;
  std::unique_ptr<CoverageMap> run_;
  std::unique_ptr<CoverageMap> global_;
  std::unique_ptr<CoverageMap> crash_global_;
  std::array<int32_t, kCoverageMapSize> top_rated_{};
  std::set<uint32_t> seen_bugs_;
  uint64_t execs_ = 0;
  Clock::time_point start_;
  CampaignResult result_;
};

std::string EntryName(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "id_%06zu", index);
  return buf;
}

}  // namespace

CampaignResult FuzzCampaign(const Target& target, std::span<const Bytes> seeds,
                            const CampaignOptions& options,
                            const ExecObserver& observer) {
  if (seeds.empty()) throw InvalidArgument("fuzz campaign needs >= 1 seed");
  if (options.max_execs == 0 && !(options.max_seconds > 0)) {
    throw InvalidArgument("fuzz campaign needs a positive budget");
  }
  Campaign campaign(target, options, observer);
  return campaign.Run(seeds);
}

void WriteCampaignOutput(const CampaignResult& result,
                         const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "queue");
  fs::create_directories(dir / "crashes");
  for (size_t i = 0; i < result.queue.size(); ++i) {
    WriteFileBytes(dir / "queue" / EntryName(i), result.queue[i].input);
  }
  for (size_t i = 0; i < result.crashes.size(); ++i) {
    const CrashEntry& c = result.crashes[i];
    WriteFileBytes(dir / "crashes" /
                       (EntryName(i) + "_bug_" + std::to_string(c.exit.bug_id)),
                   c.input);
  }
  const CampaignStats& s = result.stats;
  nlohmann::json stats = {
      {"executions", s.executions},
      {"elapsed_s", s.elapsed_s},
      {"wall_s", s.wall_s},
      {"execs_per_second", s.execs_per_second},
      {"queue_size", s.queue_size},
      {"crash_count", s.crash_count},
      {"coverage_bits", s.coverage_bits},
      {"cycles", s.cycles},
  };
  std::ofstream out(dir / "stats.json");
  out << stats.dump(2) << "\n";
  if (!out) throw Error("cannot write " + (dir / "stats.json").string());
}

}  // namespace gtbench
