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

#ifndef GTBENCH_DIVERSITY_FEATURE_MATRIX_H_
#define GTBENCH_DIVERSITY_FEATURE_MATRIX_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gtbench/common/bytes.h"
#include "gtbench/targets/target.h"

namespace gtbench {

// One subject-seed run: {subject, seed, counts: {category: count}} plus an
// optional benchmark family label.
struct FeatureProfile {
  std::string subject;
  std::string family;
  std::string seed;
  std::map<std::string, double> counts;
};

// Throws FormatError on malformed documents or negative counts.
FeatureProfile ParseProfile(std::string_view json_text);
std::string ProfileToJson(const FeatureProfile& profile);
// Every *.json file in `dir`, in name order.
std::vector<FeatureProfile> ReadProfiles(const std::filesystem::path& dir);

// Runs `input` through the target and records its operation counts.
FeatureProfile TargetProfile(const Target& target, ByteSpan input,
                             std::string seed_name);

// Row-major dense matrix.
struct DenseMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(size_t r, size_t c) { return data[r * cols + c]; }
  double operator()(size_t r, size_t c) const { return data[r * cols + c]; }
};

// values(i, j): mean count of category i over the seeds of subject j.
struct FeatureMatrix {
  std::vector<std::string> categories;  // N
  std::vector<std::string> subjects;    // K
  std::vector<std::string> families;    // per subject
  DenseMatrix values;                   // N x K
};

// Categories default to the sorted union of labels seen; when `categories`
// is given, any other label is an error. Subjects are in first-seen order
// unless `subjects` is given, in which case a listed subject without
// profiles is an error. Missing categories count as 0.
FeatureMatrix BuildMatrix(std::span<const FeatureProfile> profiles,
                          std::span<const std::string> categories = {},
                          std::span<const std::string> subjects = {});

}  // namespace gtbench

#endif  // GTBENCH_DIVERSITY_FEATURE_MATRIX_H_
