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

#include "gtbench/fuzzer/coverage.h"

#include <bit>
#include <cstring>

namespace gtbench {

namespace {

constexpr std::array<uint8_t, 256> MakeClassTable() {
  std::array<uint8_t, 256> table{};
  for (int i = 0; i < 256; ++i) table[i] = BucketClass(static_cast<uint8_t>(i));
  return table;
}

constexpr std::array<uint8_t, 256> kClassTable = MakeClassTable();

uint64_t LoadWord(const uint8_t* p) {
  uint64_t w;
  std::memcpy(&w, p, sizeof(w));
  return w;
}

}  // namespace

bool IsInteresting(const CoverageMap& run, CoverageMap& global) {
  bool novel = false;
  for (size_t base = 0; base < kCoverageMapSize; base += 8) {
    if (LoadWord(&run.bytes[base]) == 0) continue;
    for (size_t i = base; i < base + 8; ++i) {
      const uint8_t cls = kClassTable[run.bytes[i]];
      if ((cls & ~global.bytes[i]) != 0) {
        global.bytes[i] |= cls;
        novel = true;
      }
    }
  }
  return novel;
}

void ClassifyCounts(CoverageMap& map) {
  for (uint8_t& b : map.bytes) b = kClassTable[b];
}

uint64_t CoverageSignature(const CoverageMap& run) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t base = 0; base < kCoverageMapSize; base += 8) {
    if (LoadWord(&run.bytes[base]) == 0) continue;
    for (size_t i = base; i < base + 8; ++i) {
      const uint8_t cls = kClassTable[run.bytes[i]];
      if (cls == 0) continue;
      h ^= (static_cast<uint64_t>(i) << 8) | cls;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

size_t CountClassBits(const CoverageMap& global) {
  size_t n = 0;
  for (uint8_t b : global.bytes) n += static_cast<size_t>(std::popcount(b));
  return n;
}

}  // namespace gtbench
