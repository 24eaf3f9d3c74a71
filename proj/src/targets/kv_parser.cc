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

#include "gtbench/targets/kv_parser.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <string>

namespace gtbench {

uint64_t LengthAfterUnboundedCopy(std::string_view str) {
  const size_t nul = str.find('\0');
  if (nul != std::string_view::npos) str = str.substr(0, nul);
  std::array<uint8_t, 24> frame{};
  StoreLe64(&frame[16], str.size());
  for (size_t i = 0; i <= str.size() && i < frame.size(); ++i) {
    frame[i] = i < str.size() ? static_cast<uint8_t>(str[i]) : 0;
  }
  return LoadLe64(&frame[16]);
}

namespace {

constexpr BugDescriptor kKvBugs[] = {
    {KvParserTarget::kFieldOverflow, "KV00", BugClass::kOobWrite,
     KvParserTarget::kName, true, true, false, FaultKind::kOobWrite,
     "string value length >= 16 overflows the 16-byte field buffer"},
    {KvParserTarget::kZeroLengthRepeat, "KV01", BugClass::kWeirdStatePair,
     KvParserTarget::kName, true, true, true, FaultKind::kDivByZero,
     "field length == 0 after the copy (64 / len)"},
    {KvParserTarget::kDeepNesting, "KV02", BugClass::kResourceExhaustion,
     KvParserTarget::kName, true, true, false, FaultKind::kStackExhaustion,
     "record nesting depth > 32"},
    {KvParserTarget::kRepeatHang, "KV03", BugClass::kResourceExhaustion,
     KvParserTarget::kName, true, true, false, FaultKind::kHang,
     "repeat count above the iteration bound"},
    {KvParserTarget::kCountOverflow, "KV04",
     BugClass::kIntegerOverflowDivZero, KvParserTarget::kName, true, true,
     false, FaultKind::kIntegerOverflow,
     "u32 count * 8 overflows the allocation size"},
    {KvParserTarget::kDroppedReference, "KV05", BugClass::kStaleState,
     KvParserTarget::kName, true, true, false, FaultKind::kUseAfterFree,
     "$name refers to a dropped field"},
    {KvParserTarget::kSizeMismatch, "KV06", BugClass::kSemanticInconsistency,
     KvParserTarget::kName, false, true, false, FaultKind::kOobRead,
     "record size field disagrees with the length of its data field"},
};

struct Value {
  bool is_int = false;
  int64_t integer = 0;
  std::string text;
};

using Record = std::map<std::string, Value, std::less<>>;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool IsIdentifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  return head(s.front()) && std::all_of(s.begin() + 1, s.end(), tail);
}

ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

class KvParser {
 public:
  KvParser(ByteSpan input, ExecContext& ctx, uint64_t hang_bound)
      : text_(reinterpret_cast<const char*>(input.data()), input.size()),
        ctx_(ctx),
        hang_bound_(hang_bound) {}

  void Run();

 private:
  // Returns false on a syntax error, which ends parsing.
  bool Statement(std::string_view line);
  bool Assign(std::string_view key, std::string_view raw);
  bool ParseValue(std::string_view raw, Value& out);
  void StringField(std::string_view str);
  void CloseRecord(const Record& record);
  const Value* Lookup(std::string_view name) const;

  std::string_view text_;
  ExecContext& ctx_;
  uint64_t hang_bound_;
  std::vector<Record> scopes_;
  std::set<std::string, std::less<>> dropped_;
};

void KvParser::Run() {
  ctx_.Edge(GTB_SITE());
  const size_t first_nl = text_.find('\n');
  const std::string_view header = Trim(text_.substr(0, first_nl));
  if (!ctx_.EqualBytes(GTB_SITE(), AsBytes(header), AsBytes("%kv1"))) {
    ctx_.Edge(GTB_SITE());
    return;
  }
  scopes_.emplace_back();
  size_t pos = first_nl == std::string_view::npos ? text_.size() : first_nl + 1;
  while (pos < text_.size()) {
    size_t end = text_.find('\n', pos);
    if (end == std::string_view::npos) end = text_.size();
    const std::string_view line = Trim(text_.substr(pos, end - pos));
    ctx_.Count(OpCategory::kParse, end - pos + 1);
    pos = end + 1;
    if (!Statement(line)) return;
  }
  if (scopes_.size() > 1) {
    ctx_.Edge(GTB_SITE());
    return;  // unterminated record
  }
  CloseRecord(scopes_.back());
}

bool KvParser::Statement(std::string_view line) {
  if (line.empty() || line.front() == '#') {
    ctx_.Edge(GTB_SITE());
    return true;
  }
  if (line == "}") {
    ctx_.Edge(GTB_SITE());
    if (scopes_.size() == 1) return false;
    CloseRecord(scopes_.back());
    scopes_.pop_back();
    return true;
  }
  if (line.starts_with("drop ")) {
    ctx_.Edge(GTB_SITE());
    const std::string_view name = Trim(line.substr(5));
    auto it = scopes_.back().find(name);
    if (it == scopes_.back().end()) {
      ctx_.Edge(GTB_SITE());
      return false;
    }
    scopes_.back().erase(it);
    dropped_.emplace(name);
    return true;
  }
  const size_t eq = line.find('=');
  if (eq != std::string_view::npos) {
    return Assign(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  if (line.back() == '{') {
    const std::string_view name = Trim(line.substr(0, line.size() - 1));
    if (!IsIdentifier(name)) {
      ctx_.Edge(GTB_SITE());
      return false;
    }
    ctx_.Edge(GTB_SITE());
    const size_t depth = scopes_.size();  // depth of the record being opened
    ctx_.Canary(KvParserTarget::kDeepNesting,
                depth > KvParserTarget::kMaxNesting);
    if (depth > 512) return false;
    ctx_.Count(OpCategory::kAlloc);
    scopes_.emplace_back();
    return true;
  }
  ctx_.Edge(GTB_SITE());
  return false;
}

const Value* KvParser::Lookup(std::string_view name) const {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto found = it->find(name);
    if (found != it->end()) return &found->second;
  }
  return nullptr;
}

bool KvParser::ParseValue(std::string_view raw, Value& out) {
  if (raw.empty()) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  if (raw.front() == '"') {
    ctx_.Edge(GTB_SITE());
    const size_t close = raw.find('"', 1);
    if (close == std::string_view::npos || close + 1 != raw.size()) {
      ctx_.Edge(GTB_SITE());
      return false;
    }
    out.text.assign(raw.substr(1, close - 1));
    StringField(out.text);
    return true;
  }
  if (raw.front() == '$') {
    ctx_.Edge(GTB_SITE());
    const std::string_view name = raw.substr(1);
    const Value* found = Lookup(name);
    const bool stale = found == nullptr && dropped_.contains(name);
    ctx_.Canary(KvParserTarget::kDroppedReference, stale);
    if (found != nullptr) {
      out = *found;
      ctx_.Count(OpCategory::kCopy, out.text.size() + 8);
      return true;
    }
    if (stale) {
      ctx_.Edge(GTB_SITE());
      return true;  // reads released storage; modeled as an empty value
    }
    ctx_.Edge(GTB_SITE());
    return false;
  }
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  const auto [ptr, ec] = std::from_chars(first, last, out.integer);
  if (ec != std::errc() || ptr != last) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  if (out.integer < 0) ctx_.Edge(GTB_SITE());
  ctx_.Edge(GTB_SITE());
  out.is_int = true;
  return true;
}

bool KvParser::Assign(std::string_view key, std::string_view raw) {
  if (!IsIdentifier(key)) {
    ctx_.Edge(GTB_SITE());
    return false;
  }
  Value value;
  if (!ParseValue(raw, value)) return false;
  if (value.is_int && key == "count") {
    ctx_.Edge(GTB_SITE());
    const uint64_t n = static_cast<uint32_t>(value.integer);
    ctx_.Canary(KvParserTarget::kCountOverflow, n * 8 > 0xFFFFFFFFull);
    ctx_.Count(OpCategory::kAlloc);
  } else if (value.is_int && key == "repeat") {
    ctx_.Edge(GTB_SITE());
    const bool hang = value.integer > 0 &&
                      static_cast<uint64_t>(value.integer) > hang_bound_;
    ctx_.Canary(KvParserTarget::kRepeatHang, hang);
    const uint64_t iterations =
        value.integer > 0
            ? std::min<uint64_t>(static_cast<uint64_t>(value.integer),
                                 hang_bound_)
            : 0;
    ctx_.Count(OpCategory::kArith, iterations);
  }
  dropped_.erase(std::string(key));
  ctx_.Count(OpCategory::kAlloc);
  scopes_.back().insert_or_assign(std::string(key), std::move(value));
  return true;
}

void KvParser::StringField(std::string_view str) {
  const size_t nul = str.find('\0');
  const std::string_view cstr =
      nul == std::string_view::npos ? str : str.substr(0, nul);
  ctx_.Canary(KvParserTarget::kFieldOverflow, cstr.size() >= 16);
  const uint64_t len = LengthAfterUnboundedCopy(cstr);
  ctx_.Count(OpCategory::kCopy, cstr.size() + 1);
  ctx_.Canary(KvParserTarget::kZeroLengthRepeat, len == 0);
  if (len != 0) {
    const uint64_t repeat = 64 / len;
    const uint64_t padlen = 64 % len;
    ctx_.Count(OpCategory::kArith, 2);
    if (repeat > 4) ctx_.Edge(GTB_SITE());
    if (padlen == 0) ctx_.Edge(GTB_SITE());
  }
}

void KvParser::CloseRecord(const Record& record) {
  ctx_.Edge(GTB_SITE());
  auto size = record.find("size");
  auto data = record.find("data");
  if (size == record.end() || data == record.end()) return;
  if (!size->second.is_int || data->second.is_int) return;
  ctx_.Edge(GTB_SITE());
  // Two accessors for one quantity: the declared size and the stored data.
  const bool mismatch =
      size->second.integer < 0 ||
      static_cast<uint64_t>(size->second.integer) != data->second.text.size();
  ctx_.Canary(KvParserTarget::kSizeMismatch, mismatch);
}

Bytes Doc(std::string_view body) {
  std::string text = "%kv1\n";
  text += body;
  return ToBytes(text);
}

}  // namespace

std::span<const BugDescriptor> KvParserTarget::bugs() const { return kKvBugs; }

void KvParserTarget::Execute(ByteSpan input, ExecContext& ctx) const {
  KvParser(input, ctx, hang_bound_).Run();
}

std::vector<Bytes> KvParserTarget::Seeds() const {
  return {
      Doc("name = \"gtbench\"\n"
          "count = 4\n"
          "size = 5\n"
          "data = \"hello\"\n"
          "repeat = 3\n"
          "alias = $name\n"),
      Doc("# nested records\n"
          "node {\n"
          "  x = 1\n"
          "  label = \"inner\"\n"
          "  leaf {\n"
          "    y = -2\n"
          "  }\n"
          "}\n"
          "tmp = 7\n"
          "drop tmp\n"),
  };
}

std::optional<Bytes> KvParserTarget::Pov(uint32_t bug_id) const {
  switch (bug_id) {
    case kFieldOverflow:
      return Doc("name = \"0123456789abcdef\"\n");
    case kZeroLengthRepeat:
      return Doc("name = \"\"\n");
    case kDeepNesting: {
      std::string body;
      for (uint32_t i = 0; i <= kMaxNesting; ++i) body += "n {\n";
      return Doc(body);
    }
    case kRepeatHang:
      return Doc("repeat = " + std::to_string(hang_bound_ + 1) + "\n");
    case kCountOverflow:
      return Doc("count = 536870912\n");
    case kDroppedReference:
      return Doc("x = 1\ndrop x\ny = $x\n");
    case kSizeMismatch:
      return Doc("size = 3\ndata = \"hello\"\n");
    default:
      return std::nullopt;
  }
}

}  // namespace gtbench
