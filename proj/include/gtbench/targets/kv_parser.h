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

#ifndef GTBENCH_TARGETS_KV_PARSER_H_
#define GTBENCH_TARGETS_KV_PARSER_H_

// "kv-parser": a line-oriented key/value record format.
//
//   %kv1                 header line
//   name = "text"        string value
//   count = 12           integer value
//   alias = $name        reference to a field in scope
//   node {               nested record
//     ...
//   }
//   drop name            release a field
//   # comment
//
// String values are copied into a fixed 16-byte field buffer that sits
// directly in front of the field's 8-byte length (little-endian), the layout
// used to demonstrate weird states.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gtbench/common/bytes.h"
#include "gtbench/targets/target.h"

namespace gtbench {

// Models `struct { char buf[16]; size_t len; } tmp; tmp.len = strlen(str);
// strcpy(tmp.buf, str);` and returns tmp.len after the copy. Bytes written
// past the 24-byte struct are dropped.
uint64_t LengthAfterUnboundedCopy(std::string_view str);

class KvParserTarget final : public Target {
 public:
  enum Bug : uint32_t {
    kFieldOverflow = 0,       // W1
    kZeroLengthRepeat = 1,    // W2
    kDeepNesting = 2,
    kRepeatHang = 3,
    kCountOverflow = 4,
    kDroppedReference = 5,
    kSizeMismatch = 6,
  };

  static constexpr std::string_view kName = "kv-parser";
  static constexpr uint32_t kMaxNesting = 32;
  static constexpr uint64_t kDefaultHangBound = 1 << 16;

  explicit KvParserTarget(uint64_t hang_bound = kDefaultHangBound)
      : hang_bound_(hang_bound) {}

  std::string_view name() const override { return kName; }
  std::span<const BugDescriptor> bugs() const override;
  void Execute(ByteSpan input, ExecContext& ctx) const override;
  std::optional<Bytes> Pov(uint32_t bug_id) const override;
  std::vector<Bytes> Seeds() const override;

  uint64_t hang_bound() const { return hang_bound_; }

 private:
  uint64_t hang_bound_;
};

}  // namespace gtbench

#endif  // GTBENCH_TARGETS_KV_PARSER_H_
