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

#include "gtbench/analytics/mann_whitney.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

// counts[u] = number of arrangements of n1 'a' among n1 + n2 positions with
// statistic u; built with f(n1, n2) = f(n1 - 1, n2) shifted by n2 + f(n1, n2 - 1).
std::vector<double> UCounts(size_t n1, size_t n2) {
  // table[i][j] holds the count vector for sizes (i, j).
  std::vector<std::vector<std::vector<double>>> table(
      n1 + 1, std::vector<std::vector<double>>(n2 + 1));
  for (size_t i = 0; i <= n1; ++i) {
    for (size_t j = 0; j <= n2; ++j) {
      std::vector<double>& f = table[i][j];
      f.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        f[0] = 1.0;
        continue;
      }
      // Largest value belongs to an 'a': it beats all j values of b.
      const std::vector<double>& from_a = table[i - 1][j];
      for (size_t u = 0; u < from_a.size(); ++u) f[u + j] += from_a[u];
      const std::vector<double>& from_b = table[i][j - 1];
      for (size_t u = 0; u < from_b.size(); ++u) f[u] += from_b[u];
    }
  }
  return table[n1][n2];
}

void CheckSample(std::span<const double> s) {
  if (s.empty()) throw InvalidArgument("Mann-Whitney needs nonempty samples");
  for (double v : s) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("Mann-Whitney samples must be finite");
    }
  }
}

}  // namespace

std::string_view RankMethodName(RankMethod m) {
  switch (m) {
    case RankMethod::kExact:
      return "exact";
    case RankMethod::kNormalApprox:
      return "normal";
    case RankMethod::kIdentical:
      return "identical";
  }
  return "?";
}

double ExactUCdf(size_t n1, size_t n2, double u) {
  const std::vector<double> counts = UCounts(n1, n2);
  double total = 0;
  double below = 0;
  for (size_t k = 0; k < counts.size(); ++k) {
    total += counts[k];
    if (static_cast<double>(k) <= u + 1e-9) below += counts[k];
  }
  return below / total;
}

RankTestResult MannWhitneyU(std::span<const double> a,
                            std::span<const double> b) {
  CheckSample(a);
  CheckSample(b);
  const size_t n1 = a.size();
  const size_t n2 = b.size();
  const double n1n2 = static_cast<double>(n1 * n2);

  RankTestResult result;
  double u = 0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  result.u = u;

  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa == sb) {
    result.identical = true;
    result.method = RankMethod::kIdentical;
    result.p = 1.0;
    return result;
  }

  std::map<double, size_t> multiplicity;
  for (double v : sa) ++multiplicity[v];
  for (double v : sb) ++multiplicity[v];
  const size_t n = n1 + n2;
  const bool ties = multiplicity.size() < n;

  if (!ties && n <= kExactMaxTotal) {
    const std::vector<double> counts = UCounts(n1, n2);
    double total = 0, le = 0, ge = 0;
    for (size_t k = 0; k < counts.size(); ++k) {
      const auto kd = static_cast<double>(k);
      total += counts[k];
      if (kd <= u) le += counts[k];
      if (kd >= u) ge += counts[k];
    }
    result.method = RankMethod::kExact;
    result.p = std::min(1.0, 2.0 * std::min(le, ge) / total);
    return result;
  }

  result.method = RankMethod::kNormalApprox;
  double tie_term = 0;
  for (const auto& [v, t] : multiplicity) {
    const auto td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  result.tie_corrected = tie_term > 0;
  const auto nd = static_cast<double>(n);
  const double variance =
      n1n2 / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  if (!(variance > 0)) {
    result.p = 1.0;
    return result;
  }
  const double z =
      std::max(0.0, std::abs(u - n1n2 / 2.0) - 0.5) / std::sqrt(variance);
  result.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

}  // namespace gtbench
