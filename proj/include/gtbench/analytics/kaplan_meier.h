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

#ifndef GTBENCH_ANALYTICS_KAPLAN_MEIER_H_
#define GTBENCH_ANALYTICS_KAPLAN_MEIER_H_

#include <cstdint>
#include <span>
#include <vector>

namespace gtbench {

struct Observation {
  double time = 0;
  bool observed = false;  // false: right-censored at `time`
};

// One step of the product-limit curve, at a time where d > 0.
struct SurvivalStep {
  double time = 0;
  uint32_t at_risk = 0;   // n_i: observations with time >= t_i
  uint32_t events = 0;    // d_i
  double survival = 1;    // S(t_i)
  double greenwood = 0;   // sum_{j<=i} d_j / (n_j (n_j - d_j))
  double variance = 0;    // S^2 * greenwood
  double lower = 1;       // 95% band
  double upper = 1;
};

struct SurvivalCurve {
  std::vector<SurvivalStep> steps;
  uint32_t n = 0;
  double max_time = 0;  // largest observation time

  // Right-continuous step function; 1 before the first step.
  double At(double t) const;
  double LowerAt(double t) const;
  double UpperAt(double t) const;
};

// Kaplan-Meier estimate with Greenwood variance and log-transformed 95%
// intervals S * exp(+-1.96 * sqrt(greenwood)), clipped to [0, 1]. Once S
// reaches 0 the band is [0, 0]. Throws InvalidArgument for an empty input
// or a negative or non-finite time.
SurvivalCurve KaplanMeier(std::span<const Observation> observations);

}  // namespace gtbench

#endif  // GTBENCH_ANALYTICS_KAPLAN_MEIER_H_
