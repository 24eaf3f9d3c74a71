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

#ifndef GTBENCH_TARGETS_TARGET_H_
#define GTBENCH_TARGETS_TARGET_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gtbench/canary/registry.h"
#include "gtbench/common/bytes.h"
#include "gtbench/fuzzer/coverage.h"

namespace gtbench {

enum class BugClass {
  kIntegerOverflowDivZero,
  kMagicValue,
  kChecksumGuarded,
  kOobRead,
  kOobWrite,
  kStaleState,
  kWeirdStatePair,
  kSemanticInconsistency,
  kResourceExhaustion,
};

// What the ideal-sanitizer analog reports for a triggered, detectable bug.
enum class FaultKind {
  kOobRead,
  kOobWrite,
  kDivByZero,
  kUseAfterFree,
  kIntegerOverflow,
  kStackExhaustion,
  kHang,
};

std::string_view BugClassName(BugClass c);
std::string_view FaultKindName(FaultKind k);

struct BugDescriptor {
  uint32_t id = 0;
  std::string_view tag;     // suite-unique short name, e.g. "CP01"
  BugClass bug_class = BugClass::kOobRead;
  std::string_view target;
  bool detectable = true;
  bool has_pov = true;
  // Reach point and trigger predicate sit on a parse path that is not behind
  // a checksum or a multi-byte magic comparison.
  bool shallow = false;
  FaultKind fault = FaultKind::kOobRead;
  std::string_view trigger;  // human-readable trigger predicate
};

enum class ExecMode { kNormal, kFatal, kDetect };

std::string_view ExecModeName(ExecMode mode);

// Operation categories counted by the targets for workload profiles.
enum class OpCategory { kParse, kCompare, kArith, kChecksum, kAlloc, kCopy };
inline constexpr size_t kOpCategoryCount = 6;
std::string_view OpCategoryName(OpCategory c);
using OpProfile = std::array<uint64_t, kOpCategoryCount>;

struct ExecOptions {
  CoverageMap* coverage = nullptr;  // edge coverage sink, optional
  bool cmplog = false;              // emit comparison-progress features
  OpProfile* profile = nullptr;     // operation counts, optional
};

// Thrown through the target when a fatal canary fires in-process.
struct FatalCanarySignal {
  uint32_t bug_id;
};

// Thrown through the target in Detect mode at a detectable bug's fault.
struct ModeledFaultSignal {
  uint32_t bug_id;
  FaultKind kind;
};

// Per-execution services handed to a target: canaries, coverage, comparison
// logging and operation counting.
class ExecContext {
 public:
  ExecContext(BugRegistry& registry, ExecMode mode,
              std::span<const BugDescriptor> bugs, const ExecOptions& options)
      : registry_(registry), mode_(mode), bugs_(bugs), options_(options) {}

  ExecMode mode() const { return mode_; }

  // In Detect mode the modeled fault fires only for the bug that moves the
  // execution into a weird state; later conditions are not trusted.
  void Canary(uint32_t bug_id, bool condition) {
    const bool was_faulty = registry_.faulty();
    registry_.Log(bug_id, condition);
    if (mode_ == ExecMode::kDetect && condition && !was_faulty &&
        bug_id < bugs_.size() && bugs_[bug_id].detectable) {
      throw ModeledFaultSignal{bug_id, bugs_[bug_id].fault};
    }
  }

  void Edge(LocationId site) {
    if (options_.coverage == nullptr) return;
    options_.coverage->Hit(CoverageIndex(prev_loc_, site));
    prev_loc_ = static_cast<LocationId>(site >> 1);
  }

  // Equality used by the target's own parsing logic. With cmplog enabled,
  // the number of matching bytes becomes a coverage feature so a fuzzer can
  // approach the constant one byte at a time.
  bool Equal32(LocationId site, uint32_t lhs, uint32_t rhs);
  bool EqualBytes(LocationId site, ByteSpan lhs, ByteSpan rhs);

  void Count(OpCategory category, uint64_t n = 1) {
    if (options_.profile != nullptr) {
      (*options_.profile)[static_cast<size_t>(category)] += n;
    }
  }

 private:
  void ComparisonFeature(LocationId site, uint32_t matched);

  BugRegistry& registry_;
  ExecMode mode_;
  std::span<const BugDescriptor> bugs_;
  ExecOptions options_;
  LocationId prev_loc_ = 0;
};

class Target {
 public:
  virtual ~Target() = default;

  virtual std::string_view name() const = 0;
  virtual std::span<const BugDescriptor> bugs() const = 0;
  // Parses `input`, calling ctx.Canary at each injected bug's reach point.
  virtual void Execute(ByteSpan input, ExecContext& ctx) const = 0;
  // Stored proof-of-vulnerability input, or nullopt when none ships.
  virtual std::optional<Bytes> Pov(uint32_t bug_id) const = 0;
  virtual std::vector<Bytes> Seeds() const = 0;

  uint32_t bug_count() const { return static_cast<uint32_t>(bugs().size()); }
};

enum class ExitKind { kClean, kFatalCanary, kModeledFault };

struct ExecExit {
  ExitKind kind = ExitKind::kClean;
  uint32_t bug_id = 0;               // valid unless kClean
  FaultKind fault = FaultKind::kOobRead;  // valid for kModeledFault

  bool abnormal() const { return kind != ExitKind::kClean; }
};

struct ExecutionOutcome {
  ExecExit exit;
  RegistrySnapshot snapshot;
};

// Runs one execution on a caller-owned registry (reset first). The registry's
// canary mode follows `mode`. Used by the fuzzing loop.
ExecExit RunOnce(const Target& target, ByteSpan input, ExecMode mode,
                 BugRegistry& registry, const ExecOptions& options = {});

// Runs one execution on a fresh in-memory registry and returns the outcome
// together with the final counters.
ExecutionOutcome RunDriver(const Target& target, ByteSpan input, ExecMode mode,
                           const ExecOptions& options = {});
// Throws InvalidArgument for an unknown target name.
ExecutionOutcome RunDriver(std::string_view target_name, ByteSpan input,
                           ExecMode mode, const ExecOptions& options = {});

}  // namespace gtbench

#endif  // GTBENCH_TARGETS_TARGET_H_
