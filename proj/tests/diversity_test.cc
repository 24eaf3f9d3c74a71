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

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "gtbench/common/errors.h"
#include "gtbench/diversity/feature_matrix.h"
#include "gtbench/diversity/pca.h"
#include "gtbench/targets/suite.h"
#include "oracles/oracles.h"

namespace gtbench {
namespace {

namespace fs = std::filesystem;

FeatureProfile Profile(std::string subject, std::string seed,
                       std::map<std::string, double> counts) {
  return {std::move(subject), "fam", std::move(seed), std::move(counts)};
}

TEST(FeatureMatrixTest, AveragesSeedsAndFillsMissing) {
  const std::vector<FeatureProfile> profiles = {
      Profile("x", "s1", {{"add", 2}, {"mul", 1}}),
      Profile("x", "s2", {{"add", 4}}),
      Profile("y", "s1", {{"mul", 5}})};
  const FeatureMatrix m = BuildMatrix(profiles);
  ASSERT_EQ(m.categories, (std::vector<std::string>{"add", "mul"}));
  ASSERT_EQ(m.subjects, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(m.values(0, 0), 3);
  EXPECT_EQ(m.values(1, 0), 0.5);
  EXPECT_EQ(m.values(0, 1), 0);
  EXPECT_EQ(m.values(1, 1), 5);
  EXPECT_EQ(m.families[1], "fam");
}

TEST(FeatureMatrixTest, RejectsBadInput) {
  const std::vector<FeatureProfile> profiles = {Profile("x", "s", {{"a", 1}})};
  const std::vector<std::string> cats = {"b"};
  EXPECT_THROW(BuildMatrix(profiles, cats), InvalidArgument);
  const std::vector<std::string> subjects = {"x", "z"};
  EXPECT_THROW(BuildMatrix(profiles, {}, subjects), InvalidArgument);
  const std::vector<std::string> dup = {"x", "x"};
  EXPECT_THROW(BuildMatrix(profiles, {}, dup), InvalidArgument);
  const std::vector<FeatureProfile> negative = {Profile("x", "s", {{"a", -1}})};
  EXPECT_THROW(BuildMatrix(negative), InvalidArgument);
  EXPECT_THROW(BuildMatrix({}), InvalidArgument);
}

TEST(FeatureMatrixTest, ProfileJsonRoundTrip) {
  const FeatureProfile p = Profile("x", "s1", {{"add", 2.5}, {"load", 7}});
  const FeatureProfile back = ParseProfile(ProfileToJson(p));
  EXPECT_EQ(back.subject, "x");
  EXPECT_EQ(back.family, "fam");
  EXPECT_EQ(back.seed, "s1");
  EXPECT_EQ(back.counts, p.counts);
  EXPECT_THROW(ParseProfile("{"), FormatError);
  EXPECT_THROW(ParseProfile(R"({"subject":"x","seed":"s","counts":{"a":-2}})"),
               FormatError);
}

TEST(FeatureMatrixTest, TargetProfilesCountOperations) {
  const Target& t = GetTarget("chunk-parser");
  const Bytes seed = t.Seeds().front();
  const FeatureProfile p = TargetProfile(t, seed, "seed0");
  EXPECT_EQ(p.subject, "chunk-parser");
  EXPECT_EQ(p.family, "gtbench");
  EXPECT_FALSE(p.counts.empty());
  for (const auto& [c, v] : p.counts) EXPECT_GE(v, 0) << c;
}

FeatureMatrix RandomMatrix(std::mt19937_64& rng, size_t cats, size_t subjects,
                           oracle::Mat* x) {
  FeatureMatrix m;
  std::uniform_real_distribution<double> u(0, 100);
  m.values = DenseMatrix(cats, subjects);
  x->assign(subjects, std::vector<double>(cats));
  for (size_t i = 0; i < cats; ++i) m.categories.push_back("c" + std::to_string(i));
  for (size_t j = 0; j < subjects; ++j) {
    m.subjects.push_back("s" + std::to_string(j));
    m.families.push_back("f");
  }
  for (size_t i = 0; i < cats; ++i) {
    const bool constant = rng() % 7 == 0;
    for (size_t j = 0; j < subjects; ++j) {
      m.values(i, j) = constant ? 4.0 : u(rng);
      (*x)[j][i] = m.values(i, j);
    }
  }
  return m;
}

TEST(PcaTest, MatchesJacobiOracle) {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int run = 0; run < 100; ++run) {
    const size_t subjects = 2 + rng() % 7;   // 2..8
    const size_t cats = 1 + rng() % 12;      // 1..12
    oracle::Mat x;
    const FeatureMatrix m = RandomMatrix(rng, cats, subjects, &x);
    const oracle::PcaOracle want = oracle::BruteForcePca(x);
    if (want.z[0].empty()) {
      EXPECT_THROW(Pca(m, 1), DegenerateInput);
      continue;
    }
    const size_t rank = std::min(subjects - 1, want.z[0].size());
    const PcaResult got = Pca(m, rank);
    ASSERT_EQ(got.rank, rank);
    EXPECT_EQ(got.categories.size() + got.dropped_categories.size(), cats);
    double total = 0;
    for (double v : want.values) total += v;
    EXPECT_NEAR(got.total_variance, total, 1e-9 * total);
    double explained = 0;
    for (size_t c = 0; c < rank; ++c) {
      EXPECT_NEAR(got.eigenvalues[c], want.values[c], 1e-9 * total);
      explained += got.explained[c];
      double dot = 0;
      for (size_t i = 0; i < got.categories.size(); ++i) {
        dot += got.loadings(i, c) * want.vectors[i][c];
      }
      EXPECT_NEAR(std::abs(dot), 1.0, 1e-9);
      // Scores equal z * loading up to the same sign.
      const double sign = dot < 0 ? -1 : 1;
      for (size_t j = 0; j < subjects; ++j) {
        double s = 0;
        for (size_t i = 0; i < got.categories.size(); ++i) {
          s += want.z[j][i] * want.vectors[i][c];
        }
        EXPECT_NEAR(got.scores(j, c), sign * s, 1e-9 * (1 + std::abs(s)));
      }
    }
    EXPECT_NEAR(explained, 1.0, 1e-9);
    ++compared;
  }
  EXPECT_GT(compared, 80);
}

TEST(PcaTest, LoadingsOrthonormalAndReconstruction) {
  std::mt19937_64 rng(37);
  for (int run = 0; run < 30; ++run) {
    oracle::Mat x;
    const FeatureMatrix m = RandomMatrix(rng, 3 + rng() % 8, 3 + rng() % 6, &x);
    PcaResult r;
    try {
      r = Pca(m, 1);
    } catch (const DegenerateInput&) {
      continue;
    }
    r = Pca(m, r.rank);
    const size_t n = r.categories.size(), k = r.rank;
    for (size_t a = 0; a < k; ++a) {
      for (size_t b = 0; b < k; ++b) {
        double dot = 0;
        for (size_t i = 0; i < n; ++i) dot += r.loadings(i, a) * r.loadings(i, b);
        EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-10);
      }
      // Canonical sign: the first largest entry is positive.
      size_t arg = 0;
      for (size_t i = 1; i < n; ++i) {
        if (std::abs(r.loadings(i, a)) > std::abs(r.loadings(arg, a)) + 1e-12) {
          arg = i;
        }
      }
      EXPECT_GT(r.loadings(arg, a), 0);
    }
    for (size_t j = 0; j < r.subjects.size(); ++j) {
      for (size_t i = 0; i < n; ++i) {
        double back = 0;
        for (size_t c = 0; c < k; ++c) back += r.scores(j, c) * r.loadings(i, c);
        EXPECT_NEAR(back, r.normalized(j, i), 1e-8);
      }
    }
  }
}

TEST(PcaTest, SubjectPermutationPermutesScores) {
  std::mt19937_64 rng(41);
  oracle::Mat x;
  const FeatureMatrix m = RandomMatrix(rng, 6, 5, &x);
  FeatureMatrix p = m;
  const std::vector<size_t> perm = {3, 0, 4, 1, 2};
  for (size_t j = 0; j < 5; ++j) {
    p.subjects[j] = m.subjects[perm[j]];
    for (size_t i = 0; i < 6; ++i) p.values(i, j) = m.values(i, perm[j]);
  }
  const PcaResult a = Pca(m, 3), b = Pca(p, 3);
  for (size_t j = 0; j < 5; ++j) {
    for (size_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(b.scores(j, c), a.scores(perm[j], c), 1e-9);
    }
  }
}

TEST(PcaTest, RankOneDataExplainsEverything) {
  FeatureMatrix m;
  m.categories = {"a", "b", "c"};
  m.subjects = {"s0", "s1", "s2", "s3"};
  m.families.assign(4, "f");
  m.values = DenseMatrix(3, 4);
  for (size_t j = 0; j < 4; ++j) {
    const double t = static_cast<double>(j * j + 1);
    m.values(0, j) = t;
    m.values(1, j) = 3 * t + 2;
    m.values(2, j) = 10 - 0.5 * t;
  }
  const PcaResult r = Pca(m, 1);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_NEAR(r.explained[0], 1.0, 1e-12);
  EXPECT_THROW(Pca(m, 2), InvalidArgument);
  EXPECT_THROW(Pca(m, 0), InvalidArgument);
}

TEST(PcaTest, DegenerateAndTooFewSubjects) {
  FeatureMatrix m;
  m.categories = {"a", "b"};
  m.subjects = {"s0", "s1", "s2"};
  m.families.assign(3, "f");
  m.values = DenseMatrix(2, 3);
  for (size_t j = 0; j < 3; ++j) m.values(0, j) = m.values(1, j) = 2;
  EXPECT_THROW(Pca(m, 1), DegenerateInput);
  FeatureMatrix one;
  one.categories = {"a"};
  one.subjects = {"s0"};
  one.families = {"f"};
  one.values = DenseMatrix(1, 1);
  EXPECT_THROW(Pca(one, 1), InvalidArgument);
}

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("gtbench_div_" + std::to_string(getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

TEST(ScatterTest, ExportsRequestedPairs) {
  std::mt19937_64 rng(43);
  oracle::Mat x;
  FeatureMatrix m = RandomMatrix(rng, 8, 6, &x);
  for (size_t i = 0; i < 8; ++i) m.values(i, i % 6) += 1;  // no constant rows
  const PcaResult r = Pca(m, 4);
  const fs::path out = TempDir("scatter");
  const std::vector<std::pair<size_t, size_t>> none;
  EXPECT_TRUE(ScatterExport(r, none, out).empty());
  EXPECT_FALSE(fs::exists(out / "scatter_PC1_PC2.csv"));

  const std::vector<std::pair<size_t, size_t>> pairs = {{1, 2}, {3, 4}};
  const auto files = ScatterExport(r, pairs, out);
  EXPECT_EQ(files.size(), 4u);
  for (const char* f : {"scatter_PC1_PC2.csv", "scatter_PC1_PC2.svg",
                        "scatter_PC3_PC4.csv", "scatter_PC3_PC4.svg"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  std::ifstream in(out / "scatter_PC3_PC4.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "subject,family,PC3,PC4");
  for (size_t j = 0; std::getline(in, line); ++j) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string v; std::getline(ss, v, ',');) f.push_back(v);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0], r.subjects[j]);
    EXPECT_NEAR(std::stod(f[2]), r.scores(j, 2), 1e-12);
    EXPECT_NEAR(std::stod(f[3]), r.scores(j, 3), 1e-12);
  }
  const std::vector<std::pair<size_t, size_t>> bad = {{1, 5}};
  EXPECT_THROW(ScatterExport(r, bad, out), InvalidArgument);

  const auto tables = WritePcaTables(r, out);
  EXPECT_TRUE(fs::exists(out / "scores.csv"));
  EXPECT_TRUE(fs::exists(out / "variance.csv"));
  fs::remove_all(out);
}

}  // namespace
}  // namespace gtbench
