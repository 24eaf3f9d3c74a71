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

#ifndef GTBENCH_ORCHESTRATOR_TRIAGE_H_
#define GTBENCH_ORCHESTRATOR_TRIAGE_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gtbench/common/bytes.h"
#include "gtbench/targets/target.h"

namespace gtbench {

struct UnknownCrash {
  std::string name;  // crash file name or content hash
  std::string exit;  // how the replay ended
};

struct TriageResult {
  std::set<uint32_t> detected;
  std::set<uint32_t> triggered_undetected;
  std::vector<UnknownCrash> unknown;
  bool partial = false;  // some replays failed, see errors
  std::vector<std::string> errors;
};

struct NamedInput {
  std::string name;
  Bytes data;
};

// Replays every crash in Detect mode. A bug is detected when a replay
// triggers it and ends in a modeled fault for it. Bugs triggered by some
// replay but never detected are reported separately, as are crashes that
// trigger no injected bug.
TriageResult ReplayTriage(const Target& target,
                          std::span<const NamedInput> crashes);

}  // namespace gtbench

#endif  // GTBENCH_ORCHESTRATOR_TRIAGE_H_
