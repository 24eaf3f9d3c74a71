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

#include "gtbench/targets/target.h"

#include <algorithm>

namespace gtbench {

std::string_view BugClassName(BugClass c) {
  switch (c) {
    case BugClass::kIntegerOverflowDivZero: return "IntegerOverflowDivZero";
    case BugClass::kMagicValue: return "MagicValue";
    case BugClass::kChecksumGuarded: return "ChecksumGuarded";
    case BugClass::kOobRead: return "OOBRead";
    case BugClass::kOobWrite: return "OOBWrite";
    case BugClass::kStaleState: return "StaleState";
    case BugClass::kWeirdStatePair: return "WeirdStatePair";
    case BugClass::kSemanticInconsistency: return "SemanticInconsistency";
    case BugClass::kResourceExhaustion: return "ResourceExhaustion";
  }
  return "?";
}

std::string_view FaultKindName(FaultKind k) {
  switch (k) {
    case FaultKind::kOobRead: return "oob-read";
    case FaultKind::kOobWrite: return "oob-write";
    case FaultKind::kDivByZero: return "div-by-zero";
    case FaultKind::kUseAfterFree: return "use-after-free";
    case FaultKind::kIntegerOverflow: return "integer-overflow";
    case FaultKind::kStackExhaustion: return "stack-exhaustion";
    case FaultKind::kHang: return "hang";
  }
  return "?";
}

std::string_view ExecModeName(ExecMode mode) {
  switch (mode) {
    case ExecMode::kNormal: return "normal";
    case ExecMode::kFatal: return "fatal";
    case ExecMode::kDetect: return "detect";
  }
  return "?";
}

std::string_view OpCategoryName(OpCategory c) {
  switch (c) {
    case OpCategory::kParse: return "parse";
    case OpCategory::kCompare: return "compare";
    case OpCategory::kArith: return "arith";
    case OpCategory::kChecksum: return "checksum";
    case OpCategory::kAlloc: return "alloc";
    case OpCategory::kCopy: return "copy";
  }
  return "?";
}

void ExecContext::ComparisonFeature(LocationId site, uint32_t matched) {
  if (!options_.cmplog || options_.coverage == nullptr || matched == 0) return;
  const uint32_t mixed = (static_cast<uint32_t>(site) * 0x9E3779B1u) ^
                         (matched * 0x85EBCA77u);
  options_.coverage->Hit((mixed ^ (mixed >> 16)) % kCoverageMapSize);
}

bool ExecContext::Equal32(LocationId site, uint32_t lhs, uint32_t rhs) {
  Count(OpCategory::kCompare);
  const uint32_t diff = lhs ^ rhs;
  uint32_t matched = 0;
  for (int i = 0; i < 4; ++i) matched += ((diff >> (8 * i)) & 0xFF) == 0;
  ComparisonFeature(site, matched);
  return diff == 0;
}

bool ExecContext::EqualBytes(LocationId site, ByteSpan lhs, ByteSpan rhs) {
  Count(OpCategory::kCompare, std::min(lhs.size(), rhs.size()));
  const size_t n = std::min(lhs.size(), rhs.size());
  const auto mismatch = std::mismatch(lhs.begin(), lhs.begin() + n, rhs.begin());
  const auto prefix = static_cast<uint32_t>(mismatch.first - lhs.begin());
  ComparisonFeature(site, prefix);
  return lhs.size() == rhs.size() && prefix == n;
}

ExecExit RunOnce(const Target& target, ByteSpan input, ExecMode mode,
                 BugRegistry& registry, const ExecOptions& options) {
  registry.Reset();
  registry.set_mode(mode == ExecMode::kFatal ? CanaryMode::kFatal
                                             : CanaryMode::kNormal);
  registry.set_fatal_handler(
      [](uint32_t bug_id) { throw FatalCanarySignal{bug_id}; });
  ExecContext ctx(registry, mode, target.bugs(), options);
  try {
    target.Execute(input, ctx);
  } catch (const FatalCanarySignal& fatal) {
    return {ExitKind::kFatalCanary, fatal.bug_id, FaultKind::kOobRead};
  } catch (const ModeledFaultSignal& fault) {
    return {ExitKind::kModeledFault, fault.bug_id, fault.kind};
  }
  return {};
}

ExecutionOutcome RunDriver(const Target& target, ByteSpan input, ExecMode mode,
                           const ExecOptions& options) {
  BugRegistry registry =
      BugRegistry::CreateInMemory(target.bug_count(), CanaryMode::kNormal);
  ExecutionOutcome outcome;
  outcome.exit = RunOnce(target, input, mode, registry, options);
  outcome.snapshot = registry.Snapshot();
  return outcome;
}

}  // namespace gtbench
