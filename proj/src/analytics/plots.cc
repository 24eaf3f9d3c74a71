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

#include "gtbench/analytics/plots.h"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 56, kRight = 150, kTop = 36, kBottom = 44;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#e377c2", "#17becf"};

struct Frame {
  double duration;
  double X(double t) const {
    return kLeft + (kWidth - kLeft - kRight) * std::min(t, duration) / duration;
  }
  double Y(double s) const {
    return kTop + (kHeight - kTop - kBottom) * (1.0 - s);
  }
};

// Points of a right-continuous step function starting at (0, 1).
template <typename Value>
std::vector<std::pair<double, double>> StepPoints(const SurvivalCurve& c,
                                                  double duration,
                                                  Value value) {
  std::vector<std::pair<double, double>> pts{{0.0, 1.0}};
  double current = 1.0;
  for (const SurvivalStep& s : c.steps) {
    if (s.time > duration) break;
    pts.emplace_back(s.time, current);
    current = value(s);
    pts.emplace_back(s.time, current);
  }
  pts.emplace_back(duration, current);
  return pts;
}

std::string Path(const Frame& f,
                 const std::vector<std::pair<double, double>>& pts) {
  std::string d;
  for (size_t i = 0; i < pts.size(); ++i) {
    d += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "M" : " L",
                     f.X(pts[i].first), f.Y(pts[i].second));
  }
  return d;
}

std::string Band(const Frame& f, const SurvivalCurve& c, const char* color,
                 double opacity) {
  auto upper = StepPoints(c, f.duration,
                          [](const SurvivalStep& s) { return s.upper; });
  auto lower = StepPoints(c, f.duration,
                          [](const SurvivalStep& s) { return s.lower; });
  std::reverse(lower.begin(), lower.end());
  upper.insert(upper.end(), lower.begin(), lower.end());
  return fmt::format(
      "<path d=\"{} Z\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"none\"/>\n",
      Path(f, upper), color, opacity);
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string SurvivalSvg(std::string_view title, double duration,
                        std::span<const CurveSeries> series) {
  if (!(duration > 0)) throw InvalidArgument("plot duration must be > 0");
  const Frame f{duration};
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"20\" font-size=\"14\">{}</text>\n",
      kWidth, kHeight, kWidth, kHeight, kLeft, Escape(title));
  // Axes and ticks.
  svg += fmt::format(
      "<path d=\"M{0:.2f},{1:.2f} L{0:.2f},{2:.2f} L{3:.2f},{2:.2f}\" "
      "fill=\"none\" stroke=\"black\"/>\n",
      f.X(0), f.Y(1), f.Y(0), f.X(duration));
  for (int i = 0; i <= 4; ++i) {
    const double s = i / 4.0;
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n",
        kLeft - 6, f.Y(s) + 4, s);
    const double t = duration * i / 4.0;
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n",
        f.X(t), kHeight - kBottom + 16, t);
  }
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">time (s)</text>\n",
      f.X(duration / 2), kHeight - 8);

  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    const CurveSeries& c = series[i];
    svg += Band(f, c.reach, color, 0.08);
    svg += Band(f, c.trigger, color, 0.18);
    auto value = [](const SurvivalStep& s) { return s.survival; };
    svg += fmt::format(
        "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
        "stroke-dasharray=\"2,3\"/>\n",
        Path(f, StepPoints(c.reach, duration, value)), color);
    svg += fmt::format(
        "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
        Path(f, StepPoints(c.trigger, duration, value)), color);
    const double ly = kTop + 16.0 * static_cast<double>(i);
    const double lx = kWidth - kRight + 12;
    svg += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
        "stroke=\"{}\" stroke-width=\"2\"/>\n"
        "<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n",
        lx, ly, lx + 20, ly, color, lx + 26, ly + 4, Escape(c.label));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace gtbench
