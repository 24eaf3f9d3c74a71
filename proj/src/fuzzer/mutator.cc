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

#include "gtbench/fuzzer/mutator.h"

#include <algorithm>
#include <string>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

constexpr uint32_t kInterestingValues[] = {
    0,   1,   0xFFFFFFFFu, 16,         32,          64,         127,
    128, 255, 0x7FFF,      0xFFFF,     0x7FFFFFFF,  0xFFFFFFFFu, 0x55555555,
};

uint32_t WidthMask(uint8_t width) {
  return width == 4 ? 0xFFFFFFFFu : ((1u << (8 * width)) - 1);
}

void CheckWidth(uint8_t width) {
  if (width != 1 && width != 2 && width != 4) {
    throw InvalidArgument("mutation width must be 1, 2 or 4, got " +
                          std::to_string(width));
  }
}

void CheckRange(size_t pos, size_t width, size_t size, const char* stage) {
  if (pos > size || width > size - pos) {
    throw InvalidArgument(std::string(stage) + " position " +
                          std::to_string(pos) + " out of bounds for " +
                          std::to_string(size) + "-byte input");
  }
}

uint32_t ReadInt(const Bytes& buf, size_t pos, uint8_t width, bool big_endian) {
  uint32_t v = 0;
  for (uint8_t i = 0; i < width; ++i) {
    const uint32_t byte = buf[pos + i];
    v |= big_endian ? byte << (8 * (width - 1 - i)) : byte << (8 * i);
  }
  return v;
}

void WriteInt(Bytes& buf, size_t pos, uint8_t width, bool big_endian,
              uint32_t v) {
  for (uint8_t i = 0; i < width; ++i) {
    const int shift = big_endian ? 8 * (width - 1 - i) : 8 * i;
    buf[pos + i] = static_cast<uint8_t>(v >> shift);
  }
}

size_t BlockLength(Rng& rng, size_t limit) {
  if (limit <= 1) return limit;
  // Mostly short blocks, sometimes up to the limit.
  const size_t cap = rng.Below(4) == 0 ? limit : std::min<size_t>(limit, 32);
  return 1 + rng.Below(cap);
}

void HavocOnce(Bytes& buf, Rng& rng, size_t max_size) {
  constexpr int kOps = 12;
  int op = static_cast<int>(rng.Below(kOps));
  if (buf.empty()) op = 10;  // only insertion applies
  const size_t size = buf.size();
  switch (op) {
    case 0: {  // flip a bit
      const size_t bit = rng.Below(size * 8);
      buf[bit / 8] ^= static_cast<uint8_t>(0x80u >> (bit % 8));
      break;
    }
    case 1:
    case 2:
    case 3: {  // interesting value, width 1/2/4
      const uint8_t width = op == 1 ? 1 : (op == 2 ? 2 : 4);
      if (size < width) break;
      const std::vector<uint32_t> values = InterestingValuesForWidth(width);
      const uint32_t value = values[rng.Below(values.size())];
      WriteInt(buf, rng.Below(size - width + 1), width, rng.Coin(), value);
      break;
    }
    case 4:
    case 5:
    case 6: {  // arithmetic, width 1/2/4
      const uint8_t width = op == 4 ? 1 : (op == 5 ? 2 : 4);
      if (size < width) break;
      const size_t pos = rng.Below(size - width + 1);
      const bool big_endian = rng.Coin();
      const auto delta = static_cast<int32_t>(1 + rng.Below(kArithMax));
      const uint32_t v = ReadInt(buf, pos, width, big_endian);
      const uint32_t next = rng.Coin() ? v + static_cast<uint32_t>(delta)
                                       : v - static_cast<uint32_t>(delta);
      WriteInt(buf, pos, width, big_endian, next);
      break;
    }
    case 7: {  // random byte, guaranteed to change
      const size_t pos = rng.Below(size);
      buf[pos] ^= static_cast<uint8_t>(1 + rng.Below(255));
      break;
    }
    case 8: {  // delete a block
      if (size < 2) break;
      const size_t len = BlockLength(rng, size - 1);
      const size_t from = rng.Below(size - len + 1);
      buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(from),
                buf.begin() + static_cast<std::ptrdiff_t>(from + len));
      break;
    }
    case 9: {  // overwrite a block with a copy of another one or a constant
      if (size < 2) break;
      const size_t len = BlockLength(rng, size - 1);
      const size_t from = rng.Below(size - len + 1);
      const size_t to = rng.Below(size - len + 1);
      if (rng.Below(4) != 0) {
        std::copy_n(Bytes(buf.begin() + static_cast<std::ptrdiff_t>(from),
                          buf.begin() + static_cast<std::ptrdiff_t>(from + len))
                        .begin(),
                    len, buf.begin() + static_cast<std::ptrdiff_t>(to));
      } else {
        std::fill_n(buf.begin() + static_cast<std::ptrdiff_t>(to), len,
                    static_cast<uint8_t>(rng.Below(256)));
      }
      break;
    }
    default: {  // insert a cloned block or a constant run
      if (size >= max_size) break;
      const size_t room = max_size - size;
      Bytes block;
      if (size > 0 && rng.Below(4) != 0) {
        const size_t len = std::min(BlockLength(rng, size), room);
        const size_t from = rng.Below(size - len + 1);
        block.assign(buf.begin() + static_cast<std::ptrdiff_t>(from),
                     buf.begin() + static_cast<std::ptrdiff_t>(from + len));
      } else {
        const size_t len = std::min<size_t>(BlockLength(rng, 32), room);
        block.assign(len, static_cast<uint8_t>(rng.Below(256)));
      }
      const size_t at = rng.Below(size + 1);
      buf.insert(buf.begin() + static_cast<std::ptrdiff_t>(at), block.begin(),
                 block.end());
      break;
    }
  }
}

struct StageApplier {
  ByteSpan input;
  Rng& rng;
  size_t max_size;

  Bytes operator()(const stage::BitFlip& s) const {
    if (s.pos >= input.size() * 8) {
      throw InvalidArgument("BitFlip position " + std::to_string(s.pos) +
                            " out of bounds for " +
                            std::to_string(input.size()) + "-byte input");
    }
    Bytes out(input.begin(), input.end());
    out[s.pos / 8] ^= static_cast<uint8_t>(0x80u >> (s.pos % 8));
    return out;
  }

  Bytes operator()(const stage::ByteFlip& s) const {
    CheckRange(s.pos, 1, input.size(), "ByteFlip");
    Bytes out(input.begin(), input.end());
    out[s.pos] ^= 0xFF;
    return out;
  }

  Bytes operator()(const stage::Arith& s) const {
    CheckWidth(s.width);
    CheckRange(s.pos, s.width, input.size(), "Arith");
    Bytes out(input.begin(), input.end());
    const uint32_t v = ReadInt(out, s.pos, s.width, s.big_endian);
    WriteInt(out, s.pos, s.width, s.big_endian,
             (v + static_cast<uint32_t>(s.delta)) & WidthMask(s.width));
    return out;
  }

  Bytes operator()(const stage::Interesting& s) const {
    CheckWidth(s.width);
    CheckRange(s.pos, s.width, input.size(), "Interesting");
    Bytes out(input.begin(), input.end());
    WriteInt(out, s.pos, s.width, s.big_endian, s.value & WidthMask(s.width));
    return out;
  }

  Bytes operator()(const stage::Havoc& s) const {
    Bytes out(input.begin(), input.end());
    for (uint32_t i = 0; i < s.n_ops; ++i) HavocOnce(out, rng, max_size);
    return out;
  }

  Bytes operator()(const stage::Splice& s) const {
    const size_t common = std::min(input.size(), s.other.size());
    const size_t split = rng.Below(common + 1);
    Bytes out(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(split));
    out.insert(out.end(), s.other.begin() + static_cast<std::ptrdiff_t>(split),
               s.other.end());
    if (out.size() > max_size) out.resize(max_size);
    return out;
  }
};

}  // namespace

std::span<const uint32_t> InterestingValues() { return kInterestingValues; }

std::vector<uint32_t> InterestingValuesForWidth(uint8_t width) {
  CheckWidth(width);
  const uint32_t mask = WidthMask(width);
  std::vector<uint32_t> out;
  for (uint32_t v : kInterestingValues) {
    if (v <= mask) out.push_back(v);
    if (v == 0xFFFFFFFFu) out.push_back(mask);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Bytes Mutate(ByteSpan input, Rng& rng, const MutationStage& stage,
             size_t max_size) {
  return std::visit(StageApplier{input, rng, max_size}, stage);
}

size_t ForEachDeterministicStage(
    size_t size, const std::function<bool(const MutationStage&)>& fn) {
  size_t visited = 0;
  auto emit = [&](const MutationStage& s) {
    ++visited;
    return fn(s);
  };
  for (size_t bit = 0; bit < size * 8; ++bit) {
    if (!emit(stage::BitFlip{bit})) return visited;
  }
  for (size_t pos = 0; pos < size; ++pos) {
    if (!emit(stage::ByteFlip{pos})) return visited;
  }
  for (size_t pos = 0; pos < size; ++pos) {
    for (int32_t d = 1; d <= kArithMax; ++d) {
      if (!emit(stage::Arith{pos, d})) return visited;
      if (!emit(stage::Arith{pos, -d})) return visited;
    }
  }
  for (uint8_t width : {uint8_t{1}, uint8_t{2}, uint8_t{4}}) {
    if (size < width) continue;
    const std::vector<uint32_t> values = InterestingValuesForWidth(width);
    for (size_t pos = 0; pos + width <= size; ++pos) {
      for (uint32_t v : values) {
        if (!emit(stage::Interesting{pos, v, width, false})) return visited;
        if (width > 1 && !emit(stage::Interesting{pos, v, width, true})) {
          return visited;
        }
      }
    }
  }
  return visited;
}

}  // namespace gtbench
