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

#ifndef GTBENCH_FUZZER_COVERAGE_H_
#define GTBENCH_FUZZER_COVERAGE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace gtbench {

inline constexpr size_t kCoverageMapSize = 1 << 16;

using LocationId = uint16_t;

// Edge index for the transition prev -> cur. The caller then stores
// `cur >> 1` as the next `prev`, so A->B and B->A land on different slots.
constexpr uint32_t CoverageIndex(LocationId prev, LocationId cur) {
  return static_cast<uint32_t>(prev ^ cur) % kCoverageMapSize;
}

// Location id for an instrumentation site, derived from file and line.
constexpr LocationId SiteId(std::string_view file, uint32_t line) {
  uint32_t h = 2166136261u;
  for (char c : file) {
    h ^= static_cast<uint8_t>(c);
    h *= 16777619u;
  }
  for (int i = 0; i < 4; ++i) {
    h ^= (line >> (8 * i)) & 0xFF;
    h *= 16777619u;
  }
  return static_cast<LocationId>(h ^ (h >> 16));
}

#define GTB_SITE() (::gtbench::SiteId(__FILE__, __LINE__))

// Hit-count class of a raw 8-bit counter:
//   0 -> 0, 1 -> 1, 2 -> 2, 3 -> 4, 4..7 -> 8, 8..15 -> 16, 16..31 -> 32,
//   32..127 -> 64, 128..255 -> 128.
constexpr uint8_t BucketClass(uint8_t count) {
  if (count == 0) return 0;
  if (count <= 2) return count;
  if (count == 3) return 4;
  if (count < 8) return 8;
  if (count < 16) return 16;
  if (count < 32) return 32;
  if (count < 128) return 64;
  return 128;
}

// Fixed-size map of raw saturating hit counters (for one run) or of
// accumulated class bits (for the global map).
struct CoverageMap {
  alignas(64) std::array<uint8_t, kCoverageMapSize> bytes{};

  void Clear() { bytes.fill(0); }
  void Hit(uint32_t index) {
    uint8_t& slot = bytes[index];
    slot = static_cast<uint8_t>(slot + (slot != 0xFF));
  }
};

// Returns true iff some slot of `run` (raw counts) has a hit class whose bit
// is not yet set in `global`; in that case `global` absorbs all new classes.
bool IsInteresting(const CoverageMap& run, CoverageMap& global);

// Replaces raw counts by their classes, in place.
void ClassifyCounts(CoverageMap& map);

// Hash of the classified form of a raw-count map.
uint64_t CoverageSignature(const CoverageMap& run);

// Number of (index, class) pairs recorded in a global map.
size_t CountClassBits(const CoverageMap& global);

}  // namespace gtbench

#endif  // GTBENCH_FUZZER_COVERAGE_H_
