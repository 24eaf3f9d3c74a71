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

#ifndef GTBENCH_ORCHESTRATOR_MONITOR_H_
#define GTBENCH_ORCHESTRATOR_MONITOR_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "gtbench/canary/registry.h"
#include "gtbench/canary/report.h"
#include "gtbench/common/bytes.h"

namespace gtbench {

enum class EventKind { kReach, kTrigger };

char EventKindCode(EventKind kind);  // 'R' or 'T'

struct BugEvent {
  uint32_t bug_id = 0;
  EventKind kind = EventKind::kReach;
  double time = 0;
  friend bool operator==(const BugEvent&, const BugEvent&) = default;
};

// Max-merges `fresh` into `cumulative` and returns one event per counter that
// goes from zero to nonzero, stamped `poll_time`. For a bug, the reach event
// precedes the trigger event. Throws FormatError when the bug counts differ.
std::vector<BugEvent> PollMerge(RegistrySnapshot& cumulative,
                                const RegistrySnapshot& fresh,
                                double poll_time);

// Same, from raw report bytes. A malformed report skips the poll: nothing is
// merged, a diagnostic goes to stderr and the result is empty.
std::vector<BugEvent> PollMergeBytes(RegistrySnapshot& cumulative,
                                     ByteSpan fresh, double poll_time);

// Trial-level monitor. Executions reset their registry, so each one is
// folded into a window; at every poll tick k * interval (and a final tick at
// the duration) the window is merged into the cumulative view. An execution
// finishing at time t is therefore seen at tick ceil(t / interval).
class PollingMonitor {
 public:
  PollingMonitor(uint32_t bug_count, double poll_interval, double duration);

  // Call after each execution with the campaign clock and its registry.
  void Observe(double time, const BugRegistry& registry);
  // Polls the remaining ticks up to the duration.
  void Finish();

  const std::vector<BugEvent>& events() const { return events_; }
  const RegistrySnapshot& cumulative() const { return cumulative_; }
  uint64_t polls() const { return polls_; }

  // Tick time that reports an event happening at `time`.
  double TickFor(double time) const;

 private:
  void PollUntil(double time);
  void Poll(double tick_time);
  double TickTime(uint64_t k) const;

  double interval_;
  double duration_;
  uint64_t last_tick_;
  uint64_t next_tick_ = 1;
  bool window_dirty_ = false;
  RegistrySnapshot window_;
  RegistrySnapshot cumulative_;
  std::vector<BugEvent> events_;
  uint64_t polls_ = 0;
};

}  // namespace gtbench

#endif  // GTBENCH_ORCHESTRATOR_MONITOR_H_
