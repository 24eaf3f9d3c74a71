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

#include "gtbench/orchestrator/monitor.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

constexpr double kTickEpsilon = 1e-9;

}  // namespace

char EventKindCode(EventKind kind) {
  return kind == EventKind::kReach ? 'R' : 'T';
}

std::vector<BugEvent> PollMerge(RegistrySnapshot& cumulative,
                                const RegistrySnapshot& fresh,
                                double poll_time) {
  if (fresh.bug_count() != cumulative.bug_count()) {
    throw FormatError("snapshot has " + std::to_string(fresh.bug_count()) +
                      " bugs, expected " +
                      std::to_string(cumulative.bug_count()));
  }
  std::vector<BugEvent> events;
  for (uint32_t id = 0; id < fresh.bug_count(); ++id) {
    BugCounters& cum = cumulative.bugs[id];
    const BugCounters& now = fresh.bugs[id];
    if (cum.reached == 0 && now.reached != 0) {
      events.push_back({id, EventKind::kReach, poll_time});
    }
    if (cum.triggered == 0 && now.triggered != 0) {
      events.push_back({id, EventKind::kTrigger, poll_time});
    }
    cum.reached = std::max(cum.reached, now.reached);
    cum.triggered = std::max(cum.triggered, now.triggered);
  }
  cumulative.faulty = cumulative.faulty || fresh.faulty;
  cumulative.timestamp = poll_time;
  return events;
}

std::vector<BugEvent> PollMergeBytes(RegistrySnapshot& cumulative,
                                     ByteSpan fresh, double poll_time) {
  try {
    RegistrySnapshot snapshot = DecodeReport(fresh);
    return PollMerge(cumulative, snapshot, poll_time);
  } catch (const FormatError& e) {
    std::cerr << "monitor: poll at " << poll_time
              << "s skipped: " << e.what() << "\n";
    return {};
  }
}

PollingMonitor::PollingMonitor(uint32_t bug_count, double poll_interval,
                               double duration)
    : interval_(poll_interval), duration_(duration) {
  if (!(poll_interval > 0) || !(duration > 0)) {
    throw InvalidArgument("monitor needs positive interval and duration");
  }
  last_tick_ = static_cast<uint64_t>(
      std::ceil(duration / poll_interval - kTickEpsilon));
  if (last_tick_ == 0) last_tick_ = 1;
  window_.bugs.resize(bug_count);
  cumulative_.bugs.resize(bug_count);
}

double PollingMonitor::TickTime(uint64_t k) const {
  return std::min(static_cast<double>(k) * interval_, duration_);
}

double PollingMonitor::TickFor(double time) const {
  auto k = static_cast<uint64_t>(
      std::max(1.0, std::ceil(time / interval_ - kTickEpsilon)));
  return TickTime(std::min(k, last_tick_));
}

void PollingMonitor::PollUntil(double time) {
  while (next_tick_ <= last_tick_ &&
         TickTime(next_tick_) < time - kTickEpsilon * interval_) {
    Poll(TickTime(next_tick_));
    ++next_tick_;
  }
}

void PollingMonitor::Poll(double tick_time) {
  ++polls_;
  if (window_dirty_) {
    for (const BugEvent& e : PollMerge(cumulative_, window_, tick_time)) {
      events_.push_back(e);
    }
    for (BugCounters& c : window_.bugs) c = {};
    window_.faulty = false;
    window_dirty_ = false;
  }
  cumulative_.timestamp = tick_time;
}

void PollingMonitor::Observe(double time, const BugRegistry& registry) {
  PollUntil(time);
  if (next_tick_ > last_tick_) return;  // past the final poll
  const uint32_t n = std::min(registry.bug_count(), window_.bug_count());
  for (uint32_t id = 0; id < n; ++id) {
    BugCounters& w = window_.bugs[id];
    const uint64_t reached = registry.reached(id);
    const uint64_t triggered = registry.triggered(id);
    if (reached > w.reached) {
      w.reached = reached;
      window_dirty_ = true;
    }
    if (triggered > w.triggered) {
      w.triggered = triggered;
      window_dirty_ = true;
    }
  }
  if (registry.faulty()) window_.faulty = true;
}

void PollingMonitor::Finish() {
  while (next_tick_ <= last_tick_) {
    Poll(TickTime(next_tick_));
    ++next_tick_;
  }
}

}  // namespace gtbench
