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

#include "gtbench/diversity/pca.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

namespace fs = std::filesystem;

constexpr double kRankTolerance = 1e-9;

void Write(const fs::path& path, const std::string& text,
           std::vector<fs::path>& written) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
  written.push_back(path);
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

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

PcaResult Pca(const FeatureMatrix& matrix, size_t k) {
  const size_t n = matrix.categories.size();
  const size_t subjects = matrix.subjects.size();
  if (subjects < 2) throw InvalidArgument("PCA needs at least two subjects");
  if (k == 0) throw InvalidArgument("PCA needs k >= 1");

  PcaResult r;
  r.subjects = matrix.subjects;
  r.families = matrix.families;
  const auto kd = static_cast<double>(subjects);
  std::vector<std::pair<double, double>> moments;  // retained (mean, sd)
  std::vector<size_t> kept;
  for (size_t i = 0; i < n; ++i) {
    double mean = 0;
    for (size_t j = 0; j < subjects; ++j) mean += matrix.values(i, j);
    mean /= kd;
    double ss = 0;
    for (size_t j = 0; j < subjects; ++j) {
      const double d = matrix.values(i, j) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / (kd - 1));
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
      r.dropped_categories.push_back(matrix.categories[i]);
      continue;
    }
    kept.push_back(i);
    moments.emplace_back(mean, sd);
    r.categories.push_back(matrix.categories[i]);
  }
  if (kept.empty()) {
    throw DegenerateInput("every category has zero variance across subjects");
  }

  const size_t m = kept.size();
  Eigen::MatrixXd z(subjects, m);
  for (size_t c = 0; c < m; ++c) {
    for (size_t j = 0; j < subjects; ++j) {
      z(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
          (matrix.values(kept[c], j) - moments[c].first) / moments[c].second;
    }
  }

  // Eigenpairs of the covariance, from whichever Gram matrix is smaller.
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // m x p
  if (m <= subjects) {
    const Eigen::MatrixXd cov = z.transpose() * z / (kd - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  } else {
    const Eigen::MatrixXd gram = z * z.transpose() / (kd - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    values = solver.eigenvalues();
    vectors = z.transpose() * solver.eigenvectors();
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
      const double norm = vectors.col(c).norm();
      if (norm > 0) vectors.col(c) /= norm;
    }
  }
  r.total_variance = z.squaredNorm() / (kd - 1);

  std::vector<Eigen::Index> order(static_cast<size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return values(a) > values(b);
                   });
  for (Eigen::Index idx : order) {
    if (values(idx) > kRankTolerance * r.total_variance) ++r.rank;
  }
  if (k > r.rank) {
    throw InvalidArgument(fmt::format(
        "k = {} exceeds the rank {} of the normalized matrix", k, r.rank));
  }

  r.normalized = DenseMatrix(subjects, m);
  for (size_t j = 0; j < subjects; ++j) {
    for (size_t c = 0; c < m; ++c) {
      r.normalized(j, c) =
          z(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c));
    }
  }
  Eigen::MatrixXd loadings(m, k);
  for (size_t c = 0; c < k; ++c) {
    Eigen::VectorXd v = vectors.col(order[c]);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      if (std::abs(v(i)) > std::abs(v(arg)) + 1e-12) arg = i;
    }
    if (v(arg) < 0) v = -v;
    loadings.col(static_cast<Eigen::Index>(c)) = v;
    r.eigenvalues.push_back(values(order[c]));
    r.explained.push_back(values(order[c]) / r.total_variance);
  }
  const Eigen::MatrixXd scores = z * loadings;
  r.loadings = DenseMatrix(m, k);
  r.scores = DenseMatrix(subjects, k);
  for (size_t c = 0; c < k; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    for (size_t i = 0; i < m; ++i) {
      r.loadings(i, c) = loadings(static_cast<Eigen::Index>(i), ci);
    }
    for (size_t j = 0; j < subjects; ++j) {
      r.scores(j, c) = scores(static_cast<Eigen::Index>(j), ci);
    }
  }
  return r;
}

std::vector<fs::path> WritePcaTables(const PcaResult& r, const fs::path& out) {
  fs::create_directories(out);
  std::vector<fs::path> written;
  std::string scores = "subject,family";
  for (size_t c = 0; c < r.scores.cols; ++c) scores += fmt::format(",PC{}", c + 1);
  scores += "\n";
  for (size_t j = 0; j < r.scores.rows; ++j) {
    scores += CsvField(r.subjects[j]) + "," + CsvField(r.families[j]);
    for (size_t c = 0; c < r.scores.cols; ++c) {
      scores += fmt::format(",{}", r.scores(j, c));
    }
    scores += "\n";
  }
  Write(out / "scores.csv", scores, written);

  std::string variance = "component,eigenvalue,explained,cumulative\n";
  double cumulative = 0;
  for (size_t c = 0; c < r.eigenvalues.size(); ++c) {
    cumulative += r.explained[c];
    variance += fmt::format("PC{},{},{},{}\n", c + 1, r.eigenvalues[c],
                            r.explained[c], cumulative);
  }
  for (const std::string& d : r.dropped_categories) {
    variance += "dropped," + CsvField(d) + ",,\n";
  }
  Write(out / "variance.csv", variance, written);
  return written;
}

std::vector<fs::path> ScatterExport(
    const PcaResult& r, std::span<const std::pair<size_t, size_t>> pairs,
    const fs::path& out) {
  const size_t k = r.scores.cols;
  for (const auto& [a, b] : pairs) {
    if (a < 1 || a > k || b < 1 || b > k) {
      throw InvalidArgument(fmt::format(
          "component pair ({}, {}) outside 1..{}", a, b, k));
    }
  }
  std::vector<fs::path> written;
  if (pairs.empty()) return written;
  fs::create_directories(out);
  for (const auto& [a, b] : pairs) {
    const std::string stem = fmt::format("scatter_PC{}_PC{}", a, b);
    std::string csv = fmt::format("subject,family,PC{},PC{}\n", a, b);
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (size_t j = 0; j < r.scores.rows; ++j) {
      const double x = r.scores(j, a - 1);
      const double y = r.scores(j, b - 1);
      csv += fmt::format("{},{},{},{}\n", CsvField(r.subjects[j]),
                         CsvField(r.families[j]), x, y);
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
    Write(out / (stem + ".csv"), csv, written);

    constexpr double kSize = 480, kPad = 48;
    const double span_x = std::max(hi_x - lo_x, 1e-12);
    const double span_y = std::max(hi_y - lo_y, 1e-12);
    auto px = [&](double x) { return kPad + (kSize - 2 * kPad) * (x - lo_x) / span_x; };
    auto py = [&](double y) { return kSize - kPad - (kSize - 2 * kPad) * (y - lo_y) / span_y; };
    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" "
        "height=\"{0}\" viewBox=\"0 0 {0} {0}\" font-family=\"sans-serif\" "
        "font-size=\"10\">\n<rect width=\"100%\" height=\"100%\" "
        "fill=\"white\"/>\n",
        kSize);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
        "stroke=\"#999\"/>\n<line x1=\"{3:.2f}\" y1=\"{4:.2f}\" "
        "x2=\"{3:.2f}\" y2=\"{5:.2f}\" stroke=\"#999\"/>\n",
        kPad, py(0), kSize - kPad, px(0), kPad, kSize - kPad);
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">PC{} "
        "({:.1f}%)</text>\n<text x=\"12\" y=\"{:.2f}\" transform=\"rotate(-90 "
        "12 {:.2f})\" text-anchor=\"middle\">PC{} ({:.1f}%)</text>\n",
        kSize / 2, kSize - 12, a, 100 * r.explained[a - 1], kSize / 2,
        kSize / 2, b, 100 * r.explained[b - 1]);
    for (size_t j = 0; j < r.scores.rows; ++j) {
      const double x = px(r.scores(j, a - 1));
      const double y = py(r.scores(j, b - 1));
      svg += fmt::format(
          "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#1f77b4\">"
          "<title>{} ({})</title></circle>\n<text x=\"{:.2f}\" "
          "y=\"{:.2f}\">{}</text>\n",
          x, y, Escape(r.subjects[j]), Escape(r.families[j]), x + 4, y - 4,
          Escape(r.subjects[j]));
    }
    svg += "</svg>\n";
    Write(out / (stem + ".svg"), svg, written);
  }
  return written;
}

}  // namespace gtbench
