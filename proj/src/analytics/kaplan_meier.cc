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

#include "gtbench/analytics/kaplan_meier.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

constexpr double kZ95 = 1.959963984540054;

const SurvivalStep* StepAt(const std::vector<SurvivalStep>& steps, double t) {
  const auto it = std::upper_bound(
      steps.begin(), steps.end(), t,
      [](double v, const SurvivalStep& s) { return v < s.time; });
  return it == steps.begin() ? nullptr : &*(it - 1);
}

}  // namespace

double SurvivalCurve::At(double t) const {
  const SurvivalStep* s = StepAt(steps, t);
  return s == nullptr ? 1.0 : s->survival;
}

double SurvivalCurve::LowerAt(double t) const {
  const SurvivalStep* s = StepAt(steps, t);
  return s == nullptr ? 1.0 : s->lower;
}

double SurvivalCurve::UpperAt(double t) const {
  const SurvivalStep* s = StepAt(steps, t);
  return s == nullptr ? 1.0 : s->upper;
}

SurvivalCurve KaplanMeier(std::span<const Observation> observations) {
  if (observations.empty()) {
    throw InvalidArgument("Kaplan-Meier needs at least one observation");
  }
  // time -> (events, removals)
  std::map<double, std::pair<uint32_t, uint32_t>> by_time;
  SurvivalCurve curve;
  for (const Observation& o : observations) {
    if (!std::isfinite(o.time) || o.time < 0) {
      throw InvalidArgument("observation times must be finite and >= 0");
    }
    auto& [events, removed] = by_time[o.time];
    events += o.observed ? 1 : 0;
    removed += 1;
    curve.max_time = std::max(curve.max_time, o.time);
  }
  curve.n = static_cast<uint32_t>(observations.size());

  uint32_t at_risk = curve.n;
  double s = 1.0;
  double greenwood = 0.0;
  for (const auto& [time, counts] : by_time) {
    const auto [d, removed] = counts;
    if (d > 0) {
      SurvivalStep step;
      step.time = time;
      step.at_risk = at_risk;
      step.events = d;
      s *= 1.0 - static_cast<double>(d) / at_risk;
      if (d < at_risk) {
        greenwood += static_cast<double>(d) /
                     (static_cast<double>(at_risk) * (at_risk - d));
      }
      step.survival = s;
      step.greenwood = greenwood;
      step.variance = s * s * greenwood;
      if (d == at_risk) {
        step.survival = 0.0;
        step.variance = 0.0;
        step.lower = step.upper = 0.0;
      } else {
        const double half = kZ95 * std::sqrt(greenwood);
        step.lower = std::clamp(s * std::exp(-half), 0.0, 1.0);
        step.upper = std::clamp(s * std::exp(half), 0.0, 1.0);
      }
      curve.steps.push_back(step);
    }
    at_risk -= removed;
  }
  return curve;
}

}  // namespace gtbench
