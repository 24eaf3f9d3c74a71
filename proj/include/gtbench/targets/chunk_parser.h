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

#ifndef GTBENCH_TARGETS_CHUNK_PARSER_H_
#define GTBENCH_TARGETS_CHUNK_PARSER_H_

// "chunk-parser": a small PNG-like binary image container.
//
//   file   := signature chunk*
//   signature = 89 'G' 'T' 'C'
//   chunk  := u32be length, 4-byte type, data[length], u32be crc
//
// The CRC is standard CRC-32 over type and data. Chunks whose type starts
// with an upper-case letter are critical: a CRC mismatch aborts parsing.
// Ancillary chunks (lower-case first letter) are used even when their CRC is
// wrong, after a warning.
//
// Critical chunks: HEAD (13 bytes: width, height, bit depth, color type,
// compression, filter, interlace), PALT (u16be declared entry count followed
// by RGB triples), DATA (filtered scanlines), TEND.
// Ancillary chunks: text (keyword NUL text), gama (u32be), prof (u32be tag,
// payload), exif (opaque).

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gtbench/common/bytes.h"
#include "gtbench/targets/target.h"

namespace gtbench {

namespace chunkfmt {

inline constexpr uint8_t kSignature[4] = {0x89, 'G', 'T', 'C'};
inline constexpr uint32_t kLegacyProfileTag = 0x4C454731;  // "LEG1"

enum ColorType : uint8_t {
  kGray = 0,
  kRgb = 2,
  kPalette = 3,
  kGrayAlpha = 4,
  kRgba = 6,
};

struct Header {
  uint32_t width = 4;
  uint32_t height = 2;
  uint8_t bit_depth = 8;
  uint8_t color_type = kRgb;
  uint8_t interlace = 0;
};

uint32_t Crc32(ByteSpan data);

// One encoded chunk with a correct CRC.
Bytes Chunk(std::string_view type, ByteSpan data);
// Same, with an explicit CRC value.
Bytes ChunkWithCrc(std::string_view type, ByteSpan data, uint32_t crc);
Bytes HeaderData(const Header& header);
// Signature followed by the given encoded chunks.
Bytes File(std::span<const Bytes> chunks);

}  // namespace chunkfmt

class ChunkParserTarget final : public Target {
 public:
  enum Bug : uint32_t {
    kTruncatedChunk = 0,
    kRowFactorDivZero = 1,
    kEmptyKeyword = 2,
    kZeroGamma = 3,
    kLegacyProfile = 4,
    kPaletteOverflow = 5,
    kStaleExif = 6,
    kPaletteSizeMismatch = 7,
    kDataLengthWrap = 8,
  };

  static constexpr std::string_view kName = "chunk-parser";

  std::string_view name() const override { return kName; }
  std::span<const BugDescriptor> bugs() const override;
  void Execute(ByteSpan input, ExecContext& ctx) const override;
  std::optional<Bytes> Pov(uint32_t bug_id) const override;
  std::vector<Bytes> Seeds() const override;

  // The valid-header seed: a 4x2 8-bit RGB image with gama, text, prof,
  // PALT, DATA and TEND chunks.
  static Bytes ValidSeed();
};

}  // namespace gtbench

#endif  // GTBENCH_TARGETS_CHUNK_PARSER_H_
