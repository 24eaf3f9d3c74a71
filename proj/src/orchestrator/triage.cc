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

#include "gtbench/orchestrator/triage.h"

#include <exception>
#include <string>

namespace gtbench {

namespace {

std::string DescribeExit(const Target& target, const ExecExit& exit) {
  switch (exit.kind) {
    case ExitKind::kClean:
      return "clean";
    case ExitKind::kFatalCanary:
      return "fatal canary " + std::to_string(exit.bug_id);
    case ExitKind::kModeledFault:
      break;
  }
  std::string out = std::string("modeled fault ") +
                    std::string(FaultKindName(exit.fault));
  if (exit.bug_id < target.bug_count()) {
    out += " at " + std::string(target.bugs()[exit.bug_id].tag);
  }
  return out;
}

}  // namespace

TriageResult ReplayTriage(const Target& target,
                          std::span<const NamedInput> crashes) {
  TriageResult result;
  std::set<uint32_t> triggered;
  for (const NamedInput& crash : crashes) {
    ExecutionOutcome outcome;
    try {
      outcome = RunDriver(target, crash.data, ExecMode::kDetect);
    } catch (const std::exception& e) {
      result.partial = true;
      result.errors.push_back(crash.name + ": " + e.what());
      continue;
    }
    bool any = false;
    for (uint32_t id = 0; id < outcome.snapshot.bug_count(); ++id) {
      if (outcome.snapshot.bugs[id].triggered > 0) {
        triggered.insert(id);
        any = true;
      }
    }
    const ExecExit& exit = outcome.exit;
    if (exit.kind == ExitKind::kModeledFault &&
        exit.bug_id < outcome.snapshot.bug_count() &&
        outcome.snapshot.bugs[exit.bug_id].triggered > 0) {
      result.detected.insert(exit.bug_id);
    }
    if (!any) {
      result.unknown.push_back({crash.name, DescribeExit(target, exit)});
    }
  }
  for (uint32_t id : triggered) {
    if (!result.detected.contains(id)) result.triggered_undetected.insert(id);
  }
  return result;
}

}  // namespace gtbench
