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

#ifndef GTBENCH_DIVERSITY_PCA_H_
#define GTBENCH_DIVERSITY_PCA_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtbench/diversity/feature_matrix.h"

namespace gtbench {

struct PcaResult {
  std::vector<std::string> subjects;
  std::vector<std::string> families;
  std::vector<std::string> categories;          // retained, N'
  std::vector<std::string> dropped_categories;  // zero variance
  DenseMatrix normalized;  // K x N' z-scores (sample standard deviation)
  DenseMatrix loadings;    // N' x k, orthonormal columns
  DenseMatrix scores;      // K x k, normalized * loadings
  std::vector<double> eigenvalues;  // k, descending
  std::vector<double> explained;    // eigenvalue / total variance
  double total_variance = 0;
  size_t rank = 0;
};

// Z-scores each category across subjects, drops zero-variance categories,
// and eigendecomposes the covariance of the normalized data (through the
// smaller of the category and subject Gram matrices). Each loading vector
// is oriented so its largest-magnitude entry is positive.
//
// Throws InvalidArgument for fewer than two subjects or k == 0 or k > rank,
// and DegenerateInput when every category has zero variance.
PcaResult Pca(const FeatureMatrix& matrix, size_t k);

// Writes scores.csv and variance.csv (plus dropped categories).
std::vector<std::filesystem::path> WritePcaTables(
    const PcaResult& result, const std::filesystem::path& out);

// For each 1-based component pair (a, b), writes scatter_PCa_PCb.csv and
// scatter_PCa_PCb.svg with every subject's scores, labeled by subject and
// family. Throws InvalidArgument for a component outside 1..k.
std::vector<std::filesystem::path> ScatterExport(
    const PcaResult& result, std::span<const std::pair<size_t, size_t>> pairs,
    const std::filesystem::path& out);

}  // namespace gtbench

#endif  // GTBENCH_DIVERSITY_PCA_H_
