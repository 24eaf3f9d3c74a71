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

#ifndef GTBENCH_ANALYTICS_PLOTS_H_
#define GTBENCH_ANALYTICS_PLOTS_H_

#include <span>
#include <string>
#include <string_view>

#include "gtbench/analytics/kaplan_meier.h"

namespace gtbench {

struct CurveSeries {
  std::string label;  // fuzzer
  SurvivalCurve reach;
  SurvivalCurve trigger;
};

// Step plot of S(t) over [0, duration]: dotted lines for reach curves, solid
// lines for trigger curves, 95% bands shaded.
std::string SurvivalSvg(std::string_view title, double duration,
                        std::span<const CurveSeries> series);

}  // namespace gtbench

#endif  // GTBENCH_ANALYTICS_PLOTS_H_
