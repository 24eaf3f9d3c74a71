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

#include "gtbench/targets/suite.h"

#include <set>

#include "gtbench/common/errors.h"
#include "gtbench/targets/chunk_parser.h"
#include "gtbench/targets/kv_parser.h"
#include "json.hpp"

namespace gtbench {

namespace {

const ChunkParserTarget kChunkParser;
const KvParserTarget kKvParser;
const Target* const kTargets[] = {&kChunkParser, &kKvParser};

}  // namespace

std::span<const Target* const> AllTargets() { return kTargets; }

const Target* FindTarget(std::string_view name) {
  for (const Target* t : kTargets) {
    if (t->name() == name) return t;
  }
  return nullptr;
}

const Target& GetTarget(std::string_view name) {
  const Target* t = FindTarget(name);
  if (t == nullptr) {
    throw InvalidArgument("unknown target '" + std::string(name) + "'");
  }
  return *t;
}

double BugDensity(std::span<const BugDescriptor> bugs) {
  std::set<std::string_view> targets;
  for (const BugDescriptor& b : bugs) targets.insert(b.target);
  if (targets.empty()) return 0.0;
  return static_cast<double>(bugs.size()) / static_cast<double>(targets.size());
}

BugCatalog ListBugs(std::optional<std::string_view> target) {
  BugCatalog catalog;
  if (target.has_value()) {
    const Target& t = GetTarget(*target);
    catalog.bugs.assign(t.bugs().begin(), t.bugs().end());
    catalog.target_count = 1;
  } else {
    for (const Target* t : kTargets) {
      catalog.bugs.insert(catalog.bugs.end(), t->bugs().begin(),
                          t->bugs().end());
    }
    catalog.target_count = std::size(kTargets);
  }
  catalog.density = BugDensity(catalog.bugs);
  return catalog;
}

Bytes GetPov(std::string_view target, uint32_t bug_id) {
  const Target& t = GetTarget(target);
  if (bug_id >= t.bug_count()) {
    throw InvalidArgument("bug id " + std::to_string(bug_id) +
                          " out of range for " + std::string(target));
  }
  std::optional<Bytes> pov = t.Pov(bug_id);
  if (!pov.has_value()) {
    throw NotAvailable("no PoV stored for " +
                       std::string(t.bugs()[bug_id].tag));
  }
  return *std::move(pov);
}

std::string CatalogJson(const BugCatalog& catalog) {
  nlohmann::json bugs = nlohmann::json::array();
  for (const BugDescriptor& b : catalog.bugs) {
    bugs.push_back({{"id", b.id},
                    {"tag", b.tag},
                    {"class", BugClassName(b.bug_class)},
                    {"target", b.target},
                    {"detectable", b.detectable},
                    {"has_pov", b.has_pov},
                    {"shallow", b.shallow},
                    {"fault", FaultKindName(b.fault)},
                    {"trigger", b.trigger}});
  }
  nlohmann::json doc = {{"targets", catalog.target_count},
                        {"density", catalog.density},
                        {"bugs", bugs}};
  return doc.dump(2);
}

ExecutionOutcome RunDriver(std::string_view target_name, ByteSpan input,
                           ExecMode mode, const ExecOptions& options) {
  return RunDriver(GetTarget(target_name), input, mode, options);
}

}  // namespace gtbench
