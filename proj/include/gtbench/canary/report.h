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

#ifndef GTBENCH_CANARY_REPORT_H_
#define GTBENCH_CANARY_REPORT_H_

// Canary report layout shared between an instrumented target and the monitor.
// All fields little-endian:
//
//   offset  size  field
//   0       4     magic "GTBM"
//   4       2     version (1)
//   6       2     reserved (0)
//   8       4     bug_count
//   12      1     faulty (0 or 1)
//   13      7     zero padding
//   20      16*n  {u64 reached, u64 triggered} per bug
//
// Records start at offset 20, so counters are not 8-byte aligned. With a
// page-aligned mapping no counter straddles a 64-byte cache line, which keeps
// single counter stores torn-free on x86-64.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "gtbench/common/bytes.h"

namespace gtbench {

inline constexpr uint8_t kReportMagic[4] = {'G', 'T', 'B', 'M'};
inline constexpr uint16_t kReportVersion = 1;
inline constexpr size_t kReportHeaderSize = 20;
inline constexpr size_t kReportRecordSize = 16;
inline constexpr size_t kReportVersionOffset = 4;
inline constexpr size_t kReportReservedOffset = 6;
inline constexpr size_t kReportBugCountOffset = 8;
inline constexpr size_t kReportFaultyOffset = 12;
inline constexpr size_t kReportPadOffset = 13;

constexpr size_t ReportSize(uint32_t bug_count) {
  return kReportHeaderSize + kReportRecordSize * static_cast<size_t>(bug_count);
}

struct BugCounters {
  uint64_t reached = 0;
  uint64_t triggered = 0;

  friend bool operator==(const BugCounters&, const BugCounters&) = default;
};

// Decoded view of a report at one instant. `timestamp` is seconds since trial
// start; it is assigned by whoever took the snapshot and is not stored in the
// report bytes.
struct RegistrySnapshot {
  double timestamp = 0.0;
  std::vector<BugCounters> bugs;
  bool faulty = false;

  uint32_t bug_count() const { return static_cast<uint32_t>(bugs.size()); }
  // Equality ignores the timestamp.
  bool SameCounters(const RegistrySnapshot& other) const {
    return faulty == other.faulty && bugs == other.bugs;
  }
};

Bytes EncodeReport(const RegistrySnapshot& snapshot);

// Throws FormatError on bad magic, version, reserved/padding bytes, faulty
// values other than 0/1, or a size that disagrees with bug_count.
RegistrySnapshot DecodeReport(ByteSpan bytes);

RegistrySnapshot ReadReportFile(const std::filesystem::path& path);

}  // namespace gtbench

#endif  // GTBENCH_CANARY_REPORT_H_
