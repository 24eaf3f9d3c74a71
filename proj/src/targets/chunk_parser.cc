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

#include "gtbench/targets/chunk_parser.h"

#include <zlib.h>

#include <algorithm>
#include <array>

namespace gtbench {

namespace chunkfmt {

uint32_t Crc32(ByteSpan data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, data.data(), static_cast<uInt>(data.size()));
  return static_cast<uint32_t>(crc);
}

Bytes ChunkWithCrc(std::string_view type, ByteSpan data, uint32_t crc) {
  Bytes out;
  out.reserve(12 + data.size());
  AppendBe32(out, static_cast<uint32_t>(data.size()));
  out.insert(out.end(), type.begin(), type.end());
  out.insert(out.end(), data.begin(), data.end());
  AppendBe32(out, crc);
  return out;
}

Bytes Chunk(std::string_view type, ByteSpan data) {
  Bytes covered(type.begin(), type.end());
  covered.insert(covered.end(), data.begin(), data.end());
  return ChunkWithCrc(type, data, Crc32(covered));
}

Bytes HeaderData(const Header& header) {
  Bytes out;
  AppendBe32(out, header.width);
  AppendBe32(out, header.height);
  out.push_back(header.bit_depth);
  out.push_back(header.color_type);
  out.push_back(0);  // compression
  out.push_back(0);  // filter method
  out.push_back(header.interlace);
  return out;
}

Bytes File(std::span<const Bytes> chunks) {
  Bytes out(std::begin(kSignature), std::end(kSignature));
  for (const Bytes& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace chunkfmt

namespace {

using chunkfmt::kLegacyProfileTag;

constexpr BugDescriptor kChunkBugs[] = {
    {ChunkParserTarget::kTruncatedChunk, "CP00", BugClass::kOobRead,
     ChunkParserTarget::kName, true, true, true, FaultKind::kOobRead,
     "chunk length + 4 exceeds the bytes remaining after the chunk type"},
    {ChunkParserTarget::kRowFactorDivZero, "CP01",
     BugClass::kIntegerOverflowDivZero, ChunkParserTarget::kName, true, true,
     false, FaultKind::kDivByZero,
     "u32 row_factor = width*channels*(depth>8?2:1)+1+(interlace?6:0) == 0"},
    {ChunkParserTarget::kEmptyKeyword, "CP02", BugClass::kOobRead,
     ChunkParserTarget::kName, true, true, true, FaultKind::kOobRead,
     "text chunk keyword is empty (keyword[len-1] read)"},
    {ChunkParserTarget::kZeroGamma, "CP03", BugClass::kIntegerOverflowDivZero,
     ChunkParserTarget::kName, true, true, true, FaultKind::kDivByZero,
     "gama value == 0"},
    {ChunkParserTarget::kLegacyProfile, "CP04", BugClass::kMagicValue,
     ChunkParserTarget::kName, true, true, false, FaultKind::kOobRead,
     "prof tag == 0x4C454731 selects the legacy table decoder"},
    {ChunkParserTarget::kPaletteOverflow, "CP05", BugClass::kChecksumGuarded,
     ChunkParserTarget::kName, true, true, false, FaultKind::kOobWrite,
     "PALT carries more than 256 entries"},
    {ChunkParserTarget::kStaleExif, "CP06", BugClass::kStaleState,
     ChunkParserTarget::kName, true, true, false, FaultKind::kUseAfterFree,
     "exif buffer released at TEND but still referenced"},
    {ChunkParserTarget::kPaletteSizeMismatch, "CP07",
     BugClass::kSemanticInconsistency, ChunkParserTarget::kName, false, true,
     false, FaultKind::kOobRead,
     "declared PALT entry count differs from the stored entries"},
    {ChunkParserTarget::kDataLengthWrap, "CP08",
     BugClass::kIntegerOverflowDivZero, ChunkParserTarget::kName, true, false,
     false, FaultKind::kIntegerOverflow,
     "u32 running DATA byte total wraps (needs > 4 GiB of DATA)"},
};

struct ParseState {
  bool have_header = false;
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t bit_depth = 0;
  uint8_t color_type = 0;
  uint32_t channels = 0;
  bool interlaced = false;
  bool have_palette = false;
  uint32_t palette_declared = 0;
  std::vector<std::array<uint8_t, 3>> palette;
  bool exif_present = false;
  Bytes exif;
  uint32_t data_total = 0;
  uint64_t row_stride = 0;
  uint64_t row_pos = 0;
  uint32_t idat_limit = 0x7FFFFFFF;
};

bool IsCritical(ByteSpan type) { return type[0] >= 'A' && type[0] <= 'Z'; }

ByteSpan Tag(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

bool ValidDepth(uint8_t color, uint8_t depth) {
  switch (color) {
    case chunkfmt::kGray:
      return depth == 1 || depth == 2 || depth == 4 || depth == 8 ||
             depth == 16;
    case chunkfmt::kPalette:
      return depth == 1 || depth == 2 || depth == 4 || depth == 8;
    case chunkfmt::kRgb:
    case chunkfmt::kGrayAlpha:
    case chunkfmt::kRgba:
      return depth == 8 || depth == 16;
    default:
      return false;
  }
}

class ChunkParser {
 public:
  ChunkParser(ByteSpan input, ExecContext& ctx) : in_(input), ctx_(ctx) {}

  void Run();

 private:
  // Per-chunk length check performed once the header is known.
  void CheckChunkLength(uint32_t length);
  bool HandleHeader(ByteSpan data);
  bool HandlePalette(ByteSpan data);
  bool HandleData(ByteSpan data);
  void HandleEnd();
  void HandleText(ByteSpan data);
  void HandleGamma(ByteSpan data);
  void HandleProfile(ByteSpan data);
  void HandleExif(ByteSpan data);

  ByteSpan in_;
  ExecContext& ctx_;
  ParseState st_;
};

void ChunkParser::Run() {
  ctx_.Edge(GTB_SITE());
  if (in_.size() < 4 ||
      !ctx_.EqualBytes(GTB_SITE(), in_.first(4),
                       ByteSpan(chunkfmt::kSignature))) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  size_t offset = 4;
  while (true) {
    if (in_.size() - offset < 8) {
      ctx_.Edge(GTB_SITE());
      return;
    }
    const uint32_t length = LoadBe32(&in_[offset]);
    const ByteSpan type = in_.subspan(offset + 4, 4);
    offset += 8;
    ctx_.Count(OpCategory::kParse, 8);
    ctx_.Edge(GTB_SITE());

    if (st_.have_header) CheckChunkLength(length);

    const uint64_t available = in_.size() - offset;
    const bool truncated = static_cast<uint64_t>(length) + 4 > available;
    ctx_.Canary(ChunkParserTarget::kTruncatedChunk, truncated);
    if (truncated) {
      ctx_.Edge(GTB_SITE());
      return;
    }
    const ByteSpan data = in_.subspan(offset, length);
    const uint32_t stored_crc = LoadBe32(&in_[offset + length]);
    const uint32_t computed_crc =
        chunkfmt::Crc32(in_.subspan(offset - 4, length + 4));
    offset += static_cast<size_t>(length) + 4;
    ctx_.Count(OpCategory::kChecksum, length + 4);

    const bool critical = IsCritical(type);
    if (!ctx_.Equal32(GTB_SITE(), stored_crc, computed_crc)) {
      if (critical) {
        ctx_.Edge(GTB_SITE());
        return;
      }
      ctx_.Edge(GTB_SITE());
    }

    if (!st_.have_header) {
      if (!ctx_.EqualBytes(GTB_SITE(), type, Tag("HEAD"))) {
        ctx_.Edge(GTB_SITE());
        return;
      }
      if (!HandleHeader(data)) return;
      continue;
    }

    if (ctx_.EqualBytes(GTB_SITE(), type, Tag("HEAD"))) {
      ctx_.Edge(GTB_SITE());
      return;  // duplicate header
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("PALT"))) {
      if (!HandlePalette(data)) return;
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("DATA"))) {
      if (!HandleData(data)) return;
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("TEND"))) {
      HandleEnd();
      return;
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("text"))) {
      HandleText(data);
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("gama"))) {
      HandleGamma(data);
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("prof"))) {
      HandleProfile(data);
    } else if (ctx_.EqualBytes(GTB_SITE(), type, Tag("exif"))) {
      HandleExif(data);
    } else if (critical) {
      ctx_.Edge(GTB_SITE());
      return;  // unknown critical chunk
    } else {
      ctx_.Edge(GTB_SITE());
    }
  }
}

void ChunkParser::CheckChunkLength(uint32_t length) {
  (void)length;
  const uint32_t row_factor = st_.width * st_.channels *
                                  (st_.bit_depth > 8 ? 2u : 1u) +
                              1u + (st_.interlaced ? 6u : 0u);
  ctx_.Count(OpCategory::kArith, 4);
  ctx_.Canary(ChunkParserTarget::kRowFactorDivZero, row_factor == 0);
  // The division below is the faulting operation; the modeled program skips
  // it instead of trapping.
  if (row_factor != 0) {
    st_.idat_limit = st_.height > 0xFFFFFFFFu / row_factor
                         ? 0x7FFFFFFFu
                         : std::min(st_.height * row_factor, 0x7FFFFFFFu);
  }
}

bool ChunkParser::HandleHeader(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  if (data.size() != 13) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  st_.width = LoadBe32(&data[0]);
  st_.height = LoadBe32(&data[4]);
  st_.bit_depth = data[8];
  st_.color_type = data[9];
  const uint8_t compression = data[10];
  const uint8_t filter = data[11];
  const uint8_t interlace = data[12];
  ctx_.Count(OpCategory::kParse, 13);
  if (st_.width == 0 || st_.width > 0x7FFFFFFF || st_.height == 0 ||
      st_.height > 0x7FFFFFFF) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  if (!ValidDepth(st_.color_type, st_.bit_depth)) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  if (compression != 0 || filter != 0 || interlace > 1) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  switch (st_.color_type) {
    case chunkfmt::kGray:
      ctx_.Edge(GTB_SITE());
      st_.channels = 1;
      break;
    case chunkfmt::kRgb:
      ctx_.Edge(GTB_SITE());
      st_.channels = 3;
      break;
    case chunkfmt::kPalette:
      ctx_.Edge(GTB_SITE());
      st_.channels = 1;
      break;
    case chunkfmt::kGrayAlpha:
      ctx_.Edge(GTB_SITE());
      st_.channels = 2;
      break;
    default:
      ctx_.Edge(GTB_SITE());
      st_.channels = 4;
      break;
  }
  st_.interlaced = interlace == 1;
  if (st_.interlaced) ctx_.Edge(GTB_SITE());
  const uint64_t bits =
      static_cast<uint64_t>(st_.width) * st_.channels * st_.bit_depth;
  st_.row_stride = 1 + (bits + 7) / 8;
  ctx_.Count(OpCategory::kArith, 3);
  st_.have_header = true;
  return true;
}

bool ChunkParser::HandlePalette(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  if (st_.have_palette || st_.color_type == chunkfmt::kGray ||
      st_.color_type == chunkfmt::kGrayAlpha) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  if (data.size() < 2 || (data.size() - 2) % 3 != 0) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  st_.palette_declared = LoadBe16(&data[0]);
  const size_t entries = (data.size() - 2) / 3;
  ctx_.Canary(ChunkParserTarget::kPaletteOverflow, entries > 256);
  ctx_.Canary(ChunkParserTarget::kPaletteSizeMismatch,
              st_.palette_declared != entries);
  ctx_.Count(OpCategory::kAlloc);
  st_.palette.resize(std::min<size_t>(entries, 256));
  for (size_t i = 0; i < st_.palette.size(); ++i) {
    std::copy_n(&data[2 + 3 * i], 3, st_.palette[i].begin());
  }
  ctx_.Count(OpCategory::kCopy, st_.palette.size() * 3);
  if (entries > 16) ctx_.Edge(GTB_SITE());
  st_.have_palette = true;
  return true;
}

bool ChunkParser::HandleData(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  if (st_.color_type == chunkfmt::kPalette && !st_.have_palette) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  if (data.size() > st_.idat_limit) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  const uint64_t total = static_cast<uint64_t>(st_.data_total) + data.size();
  ctx_.Canary(ChunkParserTarget::kDataLengthWrap, total > 0xFFFFFFFFull);
  st_.data_total = static_cast<uint32_t>(total);
  for (uint8_t byte : data) {
    if (st_.row_pos == 0) {
      switch (byte) {
        case 0: ctx_.Edge(GTB_SITE()); break;
        case 1: ctx_.Edge(GTB_SITE()); break;
        case 2: ctx_.Edge(GTB_SITE()); break;
        case 3: ctx_.Edge(GTB_SITE()); break;
        case 4: ctx_.Edge(GTB_SITE()); break;
        default:
          ctx_.Edge(GTB_SITE());
          return false;  // bad filter type
      }
    }
    st_.row_pos = (st_.row_pos + 1) % st_.row_stride;
  }
  ctx_.Count(OpCategory::kArith, data.size());
  return true;
}

void ChunkParser::HandleEnd() {
  ctx_.Edge(GTB_SITE());
  // The exif buffer is released here while the info struct keeps pointing
  // at it; the accessor below reads through the stale pointer.
  ctx_.Canary(ChunkParserTarget::kStaleExif, st_.exif_present);
  st_.exif.clear();
  if (st_.exif_present) ctx_.Edge(GTB_SITE());
}

void ChunkParser::HandleText(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  const auto nul = std::find(data.begin(), data.end(), uint8_t{0});
  const size_t keyword_len = static_cast<size_t>(nul - data.begin());
  ctx_.Count(OpCategory::kParse, keyword_len);
  // Trailing-space trimming reads keyword[keyword_len - 1].
  ctx_.Canary(ChunkParserTarget::kEmptyKeyword, keyword_len == 0);
  if (keyword_len > 79) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  if (nul == data.end()) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  const size_t text_len = data.size() - keyword_len - 1;
  ctx_.Count(OpCategory::kCopy, text_len);
  if (text_len == 0) ctx_.Edge(GTB_SITE());
  if (text_len > 64) ctx_.Edge(GTB_SITE());
}

void ChunkParser::HandleGamma(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  if (data.size() != 4) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  const uint32_t gamma = LoadBe32(&data[0]);
  ctx_.Canary(ChunkParserTarget::kZeroGamma, gamma == 0);
  if (gamma != 0) {
    const uint64_t inverse = 10000000000ull / gamma;
    ctx_.Count(OpCategory::kArith, 2);
    if (inverse > 100000) ctx_.Edge(GTB_SITE());
  }
}

void ChunkParser::HandleProfile(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  if (data.size() < 4) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  const uint32_t tag = LoadBe32(&data[0]);
  const bool legacy = ctx_.Equal32(GTB_SITE(), tag, kLegacyProfileTag);
  ctx_.Canary(ChunkParserTarget::kLegacyProfile, legacy);
  if (legacy) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  ctx_.Count(OpCategory::kCopy, data.size() - 4);
}

void ChunkParser::HandleExif(ByteSpan data) {
  ctx_.Edge(GTB_SITE());
  ctx_.Count(OpCategory::kAlloc);
  st_.exif.assign(data.begin(), data.end());
  ctx_.Count(OpCategory::kCopy, data.size());
  st_.exif_present = true;
}

Bytes DefaultHeaderChunk(uint32_t width = 4) {
  chunkfmt::Header header;
  header.width = width;
  return chunkfmt::Chunk("HEAD", chunkfmt::HeaderData(header));
}

Bytes TextData(std::string_view keyword, std::string_view text) {
  Bytes out(keyword.begin(), keyword.end());
  out.push_back(0);
  out.insert(out.end(), text.begin(), text.end());
  return out;
}

Bytes Be32Data(uint32_t v) {
  Bytes out;
  AppendBe32(out, v);
  return out;
}

Bytes PaletteData(uint16_t declared, size_t entries) {
  Bytes out;
  AppendBe16(out, declared);
  for (size_t i = 0; i < entries; ++i) {
    out.push_back(static_cast<uint8_t>(i * 7));
    out.push_back(static_cast<uint8_t>(i * 13));
    out.push_back(static_cast<uint8_t>(i * 29));
  }
  return out;
}

// Two filtered scanlines of a 4-pixel RGB row.
Bytes ImageData() {
  Bytes out;
  for (int row = 0; row < 2; ++row) {
    out.push_back(static_cast<uint8_t>(row));  // filter type
    for (int i = 0; i < 12; ++i) out.push_back(static_cast<uint8_t>(17 * i));
  }
  return out;
}

Bytes EndChunk() { return chunkfmt::Chunk("TEND", {}); }

}  // namespace

std::span<const BugDescriptor> ChunkParserTarget::bugs() const {
  return kChunkBugs;
}

void ChunkParserTarget::Execute(ByteSpan input, ExecContext& ctx) const {
  ChunkParser(input, ctx).Run();
}

Bytes ChunkParserTarget::ValidSeed() {
  const std::vector<Bytes> chunks = {
      DefaultHeaderChunk(),
      chunkfmt::Chunk("gama", Be32Data(45455)),
      chunkfmt::Chunk("text", TextData("Title", "gtbench")),
      chunkfmt::Chunk("prof", Be32Data(0)),
      chunkfmt::Chunk("PALT", PaletteData(4, 4)),
      chunkfmt::Chunk("DATA", ImageData()),
      EndChunk(),
  };
  return chunkfmt::File(chunks);
}

std::vector<Bytes> ChunkParserTarget::Seeds() const { return {ValidSeed()}; }

std::optional<Bytes> ChunkParserTarget::Pov(uint32_t bug_id) const {
  std::vector<Bytes> chunks;
  switch (bug_id) {
    case kTruncatedChunk: {
      chunks = {DefaultHeaderChunk()};
      Bytes partial;
      AppendBe32(partial, 100);
      for (char c : std::string_view("DATA")) partial.push_back(c);
      partial.resize(partial.size() + 10, 0);
      chunks.push_back(partial);
      break;
    }
    case kRowFactorDivZero: {
      chunkfmt::Header header;
      header.width = 0x55555555;
      header.height = 1;
      header.bit_depth = 8;
      header.color_type = chunkfmt::kRgb;
      header.interlace = 0;
      chunks = {chunkfmt::Chunk("HEAD", chunkfmt::HeaderData(header)),
                EndChunk()};
      break;
    }
    case kEmptyKeyword:
      chunks = {DefaultHeaderChunk(),
                chunkfmt::Chunk("text", TextData("", "orphan")), EndChunk()};
      break;
    case kZeroGamma:
      chunks = {DefaultHeaderChunk(), chunkfmt::Chunk("gama", Be32Data(0)),
                EndChunk()};
      break;
    case kLegacyProfile: {
      Bytes prof = Be32Data(kLegacyProfileTag);
      prof.insert(prof.end(), {1, 2, 3, 4});
      chunks = {DefaultHeaderChunk(), chunkfmt::Chunk("prof", prof),
                EndChunk()};
      break;
    }
    case kPaletteOverflow:
      chunks = {DefaultHeaderChunk(),
                chunkfmt::Chunk("PALT", PaletteData(257, 257)), EndChunk()};
      break;
    case kStaleExif:
      chunks = {DefaultHeaderChunk(),
                chunkfmt::Chunk("exif", Bytes{'I', 'I', '*', 0, 'm', 'e', 't', 'a'}),
                EndChunk()};
      break;
    case kPaletteSizeMismatch:
      chunks = {DefaultHeaderChunk(),
                chunkfmt::Chunk("PALT", PaletteData(5, 4)), EndChunk()};
      break;
    default:
      return std::nullopt;
  }
  return chunkfmt::File(chunks);
}

}  // namespace gtbench
