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

#ifndef GTBENCH_TESTS_ORACLES_ORACLES_H_
#define GTBENCH_TESTS_ORACLES_ORACLES_H_

// Independent reference implementations used as test oracles. They favor
// directness over speed and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace gtbench::oracle {

// Straight-line canary model:
//   if (!faulty) { reached++; if (cond) triggered++; }
//   if (cond) faulty = true;
struct ReferenceCanary {
  std::vector<uint64_t> reached;
  std::vector<uint64_t> triggered;
  bool faulty = false;

  explicit ReferenceCanary(size_t n) : reached(n, 0), triggered(n, 0) {}

  void Log(size_t id, bool cond) {
    if (id >= reached.size()) return;
    if (!faulty) {
      reached[id] = reached[id] + 1;
      if (cond) triggered[id] = triggered[id] + 1;
    }
    if (cond) faulty = true;
  }
};

struct Obs {
  double time;
  bool observed;
};

// S(t) straight from the product-limit definition: for every distinct
// event time u <= t, multiply by 1 - d(u) / n(u) with n(u) = #{time >= u}.
inline double KmAt(const std::vector<Obs>& obs, double t) {
  std::vector<double> event_times;
  for (const Obs& o : obs) {
    if (o.observed) event_times.push_back(o.time);
  }
  std::sort(event_times.begin(), event_times.end());
  event_times.erase(std::unique(event_times.begin(), event_times.end()),
                    event_times.end());
  double s = 1.0;
  for (double u : event_times) {
    if (u > t) break;
    double d = 0, n = 0;
    for (const Obs& o : obs) {
      if (o.time >= u) n += 1;
      if (o.time == u && o.observed) d += 1;
    }
    s *= 1.0 - d / n;
  }
  return s;
}

// Two-sided exact Mann-Whitney p-value by enumerating every way of choosing
// which n1 of the pooled ranks belong to the first sample (tie-free data).
inline double MwuEnumerationP(const std::vector<double>& a,
                              const std::vector<double>& b) {
  const size_t n1 = a.size(), n = a.size() + b.size();
  auto u_of = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double u = 0;
    for (double xi : x) {
      for (double yi : y) u += xi > yi ? 1.0 : (xi == yi ? 0.5 : 0.0);
    }
    return u;
  };
  const double observed = u_of(a, b);
  size_t le = 0, ge = 0, total = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<size_t>(__builtin_popcount(mask)) != n1) continue;
    std::vector<double> x, y;
    for (size_t r = 0; r < n; ++r) {
      ((mask >> r) & 1u ? x : y).push_back(static_cast<double>(r));
    }
    const double u = u_of(x, y);
    ++total;
    if (u <= observed) ++le;
    if (u >= observed) ++ge;
  }
  return std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) /
                           static_cast<double>(total));
}

using Mat = std::vector<std::vector<double>>;

// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns
// eigenvalues in descending order and the matching eigenvectors as columns.
inline std::pair<std::vector<double>, Mat> JacobiEigen(Mat a) {
  const size_t n = a.size();
  Mat v(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return a[x][x] > a[y][y]; });
  std::vector<double> values;
  Mat vectors(n, std::vector<double>(n));
  for (size_t c = 0; c < n; ++c) {
    values.push_back(a[order[c]][order[c]]);
    for (size_t r = 0; r < n; ++r) vectors[r][c] = v[r][order[c]];
  }
  return {values, vectors};
}

// Brute-force PCA: z-score columns of `x` (subjects x categories) with the
// sample standard deviation, drop constant columns, Jacobi on the
// categories x categories covariance.
struct PcaOracle {
  Mat z;                        // subjects x retained categories
  std::vector<double> values;   // all eigenvalues, descending
  Mat vectors;                  // columns
};

inline PcaOracle BruteForcePca(const Mat& x) {
  const size_t k = x.size(), n = x[0].size();
  PcaOracle out;
  out.z.assign(k, {});
  for (size_t c = 0; c < n; ++c) {
    double mean = 0;
    for (size_t j = 0; j < k; ++j) mean += x[j][c];
    mean /= static_cast<double>(k);
    double ss = 0;
    for (size_t j = 0; j < k; ++j) ss += (x[j][c] - mean) * (x[j][c] - mean);
    const double sd = std::sqrt(ss / static_cast<double>(k - 1));
    if (sd == 0) continue;
    for (size_t j = 0; j < k; ++j) out.z[j].push_back((x[j][c] - mean) / sd);
  }
  const size_t m = out.z[0].size();
  Mat cov(m, std::vector<double>(m, 0.0));
  for (size_t p = 0; p < m; ++p) {
    for (size_t q = 0; q < m; ++q) {
      for (size_t j = 0; j < k; ++j) cov[p][q] += out.z[j][p] * out.z[j][q];
      cov[p][q] /= static_cast<double>(k - 1);
    }
  }
  auto [values, vectors] = JacobiEigen(cov);
  out.values = values;
  out.vectors = vectors;
  return out;
}

}  // namespace gtbench::oracle

#endif  // GTBENCH_TESTS_ORACLES_ORACLES_H_
