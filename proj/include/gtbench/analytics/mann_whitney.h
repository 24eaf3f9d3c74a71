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

#ifndef GTBENCH_ANALYTICS_MANN_WHITNEY_H_
#define GTBENCH_ANALYTICS_MANN_WHITNEY_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace gtbench {

enum class RankMethod { kExact, kNormalApprox, kIdentical };

std::string_view RankMethodName(RankMethod m);

inline constexpr double kSignificanceLevel = 0.05;
// Largest combined sample size tested exactly (when tie-free).
inline constexpr size_t kExactMaxTotal = 14;

struct RankTestResult {
  double u = 0;   // U of the first sample: #(a > b) + ties / 2
  double p = 1;   // two-sided
  RankMethod method = RankMethod::kExact;
  bool tie_corrected = false;
  bool identical = false;  // equal multisets, reported as p = 1

  bool significant() const { return p < kSignificanceLevel; }
};

// Two-sided Mann-Whitney U test. Exact null distribution when the combined
// size is at most kExactMaxTotal and there are no ties; otherwise the normal
// approximation with tie and continuity corrections. Throws InvalidArgument
// for an empty sample or non-finite values.
RankTestResult MannWhitneyU(std::span<const double> a,
                            std::span<const double> b);

// P(U <= u) under the null for tie-free samples of sizes n1, n2.
double ExactUCdf(size_t n1, size_t n2, double u);

}  // namespace gtbench

#endif  // GTBENCH_ANALYTICS_MANN_WHITNEY_H_
