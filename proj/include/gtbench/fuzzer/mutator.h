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

#ifndef GTBENCH_FUZZER_MUTATOR_H_
#define GTBENCH_FUZZER_MUTATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <variant>

#include "gtbench/common/bytes.h"

namespace gtbench {

// Deterministic PRNG shared by the mutator and the scheduler. Only the raw
// mt19937_64 stream is used (no std distributions), so sequences are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform-ish in [0, n); n must be > 0.
  uint64_t Below(uint64_t n) { return engine_() % n; }
  bool Coin() { return (engine_() & 1) != 0; }

 private:
  std::mt19937_64 engine_;
};

namespace stage {

// Flips bit `pos % 8` of byte `pos / 8`, counting from the most significant
// bit: bit k of byte b is (b >> (7 - k)) & 1.
struct BitFlip {
  size_t pos;
};

// XORs byte `pos` with 0xFF.
struct ByteFlip {
  size_t pos;
};

// Adds `delta` (wrapping) to the `width`-byte integer at byte `pos`.
struct Arith {
  size_t pos;
  int32_t delta;
  uint8_t width = 1;
  bool big_endian = false;
};

// Overwrites `width` bytes at `pos` with `value` truncated to that width.
struct Interesting {
  size_t pos;
  uint32_t value;
  uint8_t width = 1;
  bool big_endian = false;
};

// `n_ops` stacked random edits drawn from the rng.
struct Havoc {
  uint32_t n_ops;
};

// Head of the input joined with the tail of `other` at a random split point.
struct Splice {
  ByteSpan other;
};

}  // namespace stage

using MutationStage = std::variant<stage::BitFlip, stage::ByteFlip, stage::Arith,
                                   stage::Interesting, stage::Havoc,
                                   stage::Splice>;

inline constexpr size_t kDefaultMaxInputSize = 4096;

// The interesting-values table, as 32-bit patterns (-1 is 0xFFFFFFFF).
std::span<const uint32_t> InterestingValues();

// Values of the table that are meaningful at `width` bytes: those that fit,
// plus -1 truncated to the width. Sorted, without duplicates.
std::vector<uint32_t> InterestingValuesForWidth(uint8_t width);

inline constexpr int32_t kArithMax = 35;

// Applies one stage. Deterministic stages ignore `rng`. Throws
// InvalidArgument when a deterministic stage's position is out of bounds,
// or when width is not 1, 2 or 4.
Bytes Mutate(ByteSpan input, Rng& rng, const MutationStage& stage,
             size_t max_size = kDefaultMaxInputSize);

// Enumerates the deterministic stages for an input of `size` bytes in the
// order the fuzzer runs them: walking bit flips, byte flips, 8-bit
// arithmetic (+-1..35), then interesting values at widths 1, 2 (both byte
// orders) and 4 (both byte orders). Stops early when `fn` returns false.
// Returns the number of stages visited.
size_t ForEachDeterministicStage(
    size_t size, const std::function<bool(const MutationStage&)>& fn);

}  // namespace gtbench

#endif  // GTBENCH_FUZZER_MUTATOR_H_
