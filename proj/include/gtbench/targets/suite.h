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

#ifndef GTBENCH_TARGETS_SUITE_H_
#define GTBENCH_TARGETS_SUITE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gtbench/common/bytes.h"
#include "gtbench/targets/target.h"

namespace gtbench {

// All built-in targets, in a fixed order.
std::span<const Target* const> AllTargets();

// nullptr when unknown.
const Target* FindTarget(std::string_view name);
// Throws InvalidArgument when unknown.
const Target& GetTarget(std::string_view name);

struct BugCatalog {
  std::vector<BugDescriptor> bugs;
  size_t target_count = 0;
  double density = 0.0;  // mean number of bugs per target
};

// Mean bugs per distinct target among `bugs`; 0 for an empty list.
double BugDensity(std::span<const BugDescriptor> bugs);

// Every descriptor of the suite, or of one target (InvalidArgument when the
// name is unknown).
BugCatalog ListBugs(std::optional<std::string_view> target = std::nullopt);

// Throws NotAvailable when the bug ships without a PoV and InvalidArgument
// for an unknown target or bug id.
Bytes GetPov(std::string_view target, uint32_t bug_id);

// Catalog as a JSON document: {"density":..,"targets":..,"bugs":[...]}.
std::string CatalogJson(const BugCatalog& catalog);

}  // namespace gtbench

#endif  // GTBENCH_TARGETS_SUITE_H_
