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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "gtbench/analytics/analyze.h"
#include "gtbench/analytics/comparison.h"
#include "gtbench/analytics/kaplan_meier.h"
#include "gtbench/analytics/mann_whitney.h"
#include "gtbench/analytics/survival_table.h"
#include "gtbench/common/errors.h"
#include "oracles/oracles.h"

namespace gtbench {
namespace {

namespace fs = std::filesystem;

std::vector<Observation> ToObservations(const std::vector<oracle::Obs>& obs) {
  std::vector<Observation> out;
  for (const oracle::Obs& o : obs) out.push_back({o.time, o.observed});
  return out;
}

TEST(KaplanMeierTest, AllObserved) {
  const std::vector<Observation> obs = {{1, true}, {2, true}, {3, true},
                                        {4, true}};
  const SurvivalCurve c = KaplanMeier(obs);
  EXPECT_DOUBLE_EQ(c.At(0.5), 1.0);
  EXPECT_DOUBLE_EQ(c.At(1), 0.75);
  EXPECT_DOUBLE_EQ(c.At(2), 0.5);
  EXPECT_DOUBLE_EQ(c.At(3), 0.25);
  EXPECT_DOUBLE_EQ(c.At(4), 0.0);
  EXPECT_DOUBLE_EQ(c.LowerAt(4), 0.0);
  EXPECT_DOUBLE_EQ(c.UpperAt(4), 0.0);
}

TEST(KaplanMeierTest, CensoredMiddle) {
  const std::vector<Observation> obs = {{2, true}, {4, false}, {6, true}};
  const SurvivalCurve c = KaplanMeier(obs);
  EXPECT_DOUBLE_EQ(c.At(2), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.At(5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.At(6), 0.0);
}

TEST(KaplanMeierTest, AllCensoredStaysAtOne) {
  const std::vector<Observation> obs = {{60, false}, {60, false}, {60, false}};
  const SurvivalCurve c = KaplanMeier(obs);
  for (double t : {0.0, 30.0, 60.0, 1000.0}) EXPECT_EQ(c.At(t), 1.0);
}

TEST(KaplanMeierTest, GreenwoodVariance) {
  const std::vector<Observation> obs = {{1, true}, {2, true}, {3, true},
                                        {4, true}};
  const SurvivalCurve c = KaplanMeier(obs);
  ASSERT_EQ(c.steps.size(), 4u);
  // S(1) = 3/4, Var = S^2 * 1 / (4 * 3)
  EXPECT_NEAR(c.steps[0].variance, 0.5625 / 12.0, 1e-15);
  EXPECT_NEAR(c.steps[1].greenwood, 1.0 / 12 + 1.0 / 6, 1e-15);
}

TEST(KaplanMeierTest, MatchesProductLimitOnEverySmallSample) {
  size_t cases = 0;
  for (size_t n = 1; n <= 6; ++n) {
    std::vector<size_t> times(n, 1);
    while (true) {
      for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<oracle::Obs> obs;
        for (size_t i = 0; i < n; ++i) {
          obs.push_back({static_cast<double>(times[i]), ((mask >> i) & 1u) != 0});
        }
        const SurvivalCurve c = KaplanMeier(ToObservations(obs));
        for (double t = 0; t <= 7; t += 0.5) {
          ASSERT_NEAR(c.At(t), oracle::KmAt(obs, t), 1e-12);
          ASSERT_LE(c.LowerAt(t), c.At(t) + 1e-12);
          ASSERT_GE(c.UpperAt(t), c.At(t) - 1e-12);
        }
        for (size_t s = 1; s < c.steps.size(); ++s) {
          ASSERT_LE(c.steps[s].survival, c.steps[s - 1].survival);
        }
        ++cases;
      }
      // Next nondecreasing time vector over 1..6.
      size_t i = n;
      while (i > 0 && times[i - 1] == 6) --i;
      if (i == 0) break;
      ++times[i - 1];
      for (size_t j = i; j < n; ++j) times[j] = times[i - 1];
    }
  }
  EXPECT_GT(cases, 10000u);
}

TEST(KaplanMeierTest, CensoringAnEventNeverLowersSurvival) {
  std::mt19937_64 rng(3);
  for (int run = 0; run < 500; ++run) {
    std::vector<Observation> obs;
    const size_t n = 2 + rng() % 8;
    for (size_t i = 0; i < n; ++i) {
      obs.push_back({static_cast<double>(1 + rng() % 10), true});
    }
    const SurvivalCurve before = KaplanMeier(obs);
    obs[rng() % n].observed = false;
    const SurvivalCurve after = KaplanMeier(obs);
    for (double t = 0; t <= 11; t += 1) {
      EXPECT_GE(after.At(t), before.At(t) - 1e-12);
    }
  }
}

TEST(MannWhitneyTest, SeparatedSamples) {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  const RankTestResult r = MannWhitneyU(a, b);
  EXPECT_EQ(r.u, 0);
  EXPECT_NEAR(r.p, 0.1, 1e-12);
  EXPECT_EQ(r.method, RankMethod::kExact);
  EXPECT_FALSE(r.significant());
}

TEST(MannWhitneyTest, IdenticalSamples) {
  const std::vector<double> a = {3, 3, 3}, b = {3, 3, 3};
  const RankTestResult r = MannWhitneyU(a, b);
  EXPECT_TRUE(r.identical);
  EXPECT_EQ(r.method, RankMethod::kIdentical);
  EXPECT_EQ(r.p, 1.0);
  const std::vector<double> c = {1, 2}, d = {2, 1};
  EXPECT_TRUE(MannWhitneyU(c, d).identical);
}

TEST(MannWhitneyTest, ExactMatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (size_t n1 = 1; n1 <= 5; ++n1) {
    for (size_t n2 = 1; n2 <= 5; ++n2) {
      for (int run = 0; run < 20; ++run) {
        std::vector<double> pool(n1 + n2);
        std::iota(pool.begin(), pool.end(), 0.0);
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::vector<double> a(pool.begin(), pool.begin() + n1);
        const std::vector<double> b(pool.begin() + n1, pool.end());
        const RankTestResult r = MannWhitneyU(a, b);
        ASSERT_EQ(r.method, RankMethod::kExact);
        ASSERT_NEAR(r.p, oracle::MwuEnumerationP(a, b), 1e-12);
      }
    }
  }
}

TEST(MannWhitneyTest, NormalApproximationCloseToExact) {
  std::mt19937_64 rng(9);
  for (int run = 0; run < 50; ++run) {
    std::vector<double> pool(20);
    std::iota(pool.begin(), pool.end(), 0.0);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::vector<double> a(pool.begin(), pool.begin() + 10);
    const std::vector<double> b(pool.begin() + 10, pool.end());
    const RankTestResult r = MannWhitneyU(a, b);
    ASSERT_EQ(r.method, RankMethod::kNormalApprox);
    double u = 0;
    for (double x : a) {
      for (double y : b) u += x > y;
    }
    const double exact = std::min(
        1.0, 2 * std::min(ExactUCdf(10, 10, u), 1 - ExactUCdf(10, 10, u - 1)));
    EXPECT_NEAR(r.p, exact, 0.01);
  }
}

TEST(MannWhitneyTest, RankInvariantAndComplementary) {
  std::mt19937_64 rng(11);
  for (int run = 0; run < 200; ++run) {
    std::vector<double> a(1 + rng() % 12), b(1 + rng() % 12);
    for (double& x : a) x = static_cast<double>(rng() % 6);
    for (double& x : b) x = static_cast<double>(rng() % 6);
    const RankTestResult r = MannWhitneyU(a, b);
    const RankTestResult rev = MannWhitneyU(b, a);
    EXPECT_DOUBLE_EQ(r.u + rev.u,
                     static_cast<double>(a.size() * b.size()));
    EXPECT_NEAR(r.p, rev.p, 1e-12);
    EXPECT_GE(r.p, 0);
    EXPECT_LE(r.p, 1);
    std::vector<double> fa = a, fb = b;
    for (double& x : fa) x = 2 * x + 7;
    for (double& x : fb) x = 2 * x + 7;
    const RankTestResult scaled = MannWhitneyU(fa, fb);
    EXPECT_EQ(scaled.u, r.u);
    EXPECT_NEAR(scaled.p, r.p, 1e-12);
  }
}

TEST(MannWhitneyTest, RejectsEmptySamples) {
  const std::vector<double> a = {1}, none;
  EXPECT_THROW(MannWhitneyU(a, none), InvalidArgument);
}

CampaignRecord MakeRecord(const std::string& fuzzer, double duration,
                          const std::vector<std::vector<std::optional<double>>>&
                              trigger_by_trial,
                          const std::string& target = "t") {
  CampaignRecord r;
  r.fuzzer = fuzzer;
  r.target = target;
  r.duration_s = duration;
  r.poll_interval_s = 1;
  for (size_t b = 0; b < trigger_by_trial[0].size(); ++b) {
    r.bug_tags.push_back("B" + std::to_string(b));
  }
  for (size_t i = 0; i < trigger_by_trial.size(); ++i) {
    TrialRecord t;
    t.trial_id = static_cast<uint32_t>(i);
    for (const std::optional<double>& trig : trigger_by_trial[i]) {
      t.bugs.push_back({trig ? std::optional<double>(*trig / 2) : std::nullopt,
                        trig});
    }
    r.trials.push_back(t);
  }
  return r;
}

TEST(SurvivalTableTest, FormatsTimes) {
  EXPECT_EQ(FormatSurvivalTime(20), "20.00s");
  EXPECT_EQ(FormatSurvivalTime(90), "1.50m");
  EXPECT_EQ(FormatSurvivalTime(5400), "1.50h");
}

TEST(SurvivalTableTest, MeansWithCensoring) {
  const std::vector<CampaignRecord> recs = {
      MakeRecord("f", 60, {{10.0, std::nullopt, 10.0},
                           {20.0, std::nullopt, std::nullopt},
                           {30.0, std::nullopt, std::nullopt}})};
  const SurvivalTable t = BuildSurvivalTable(recs);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0].bug, "B0");
  EXPECT_DOUBLE_EQ(t.rows[0].cells[0].mean_trigger, 20);
  EXPECT_EQ(t.rows[0].cells[0].triggered_trials, 3u);
  EXPECT_EQ(t.rows[1].bug, "B2");
  EXPECT_DOUBLE_EQ(t.rows[1].cells[0].mean_trigger, (10.0 + 60 + 60) / 3);
  EXPECT_EQ(t.rows[2].bug, "B1");
  EXPECT_DOUBLE_EQ(t.rows[2].cells[0].mean_trigger, 60);
  EXPECT_EQ(t.rows[2].cells[0].triggered_trials, 0u);
  EXPECT_FALSE(t.rows[0].cells[0].best_trigger);  // single fuzzer
}

TEST(SurvivalTableTest, BestMarkAndTies) {
  const std::vector<CampaignRecord> recs = {
      MakeRecord("a", 60, {{10.0, 5.0}, {60.0, 5.001}}),
      MakeRecord("b", 60, {{20.0, 5.0}, {20.0, 5.0}})};
  const SurvivalTable t = BuildSurvivalTable(recs);
  ASSERT_EQ(t.fuzzers, (std::vector<std::string>{"a", "b"}));
  const SurvivalRow& b1 = t.rows[0];
  ASSERT_EQ(b1.bug, "B1");
  // 5.0005 and 5.0 print the same, so neither is marked.
  EXPECT_FALSE(b1.cells[0].best_trigger);
  EXPECT_FALSE(b1.cells[1].best_trigger);
  const SurvivalRow& b0 = t.rows[1];
  EXPECT_DOUBLE_EQ(b0.cells[0].mean_trigger, 35);
  EXPECT_DOUBLE_EQ(b0.cells[1].mean_trigger, 20);
  EXPECT_FALSE(b0.cells[0].best_trigger);
  EXPECT_TRUE(b0.cells[1].best_trigger);
  EXPECT_DOUBLE_EQ(b0.mean_trigger, 27.5);
}

TEST(SurvivalTableTest, RejectsMixedDurationsAndEmptyRecords) {
  const std::vector<CampaignRecord> mixed = {MakeRecord("a", 60, {{1.0}}),
                                             MakeRecord("b", 30, {{1.0}})};
  EXPECT_THROW(BuildSurvivalTable(mixed), InvalidArgument);
  EXPECT_THROW(BuildSurvivalTable({}), InvalidArgument);
  CampaignRecord invalid = MakeRecord("a", 60, {{1.0}});
  invalid.trials[0].valid = false;
  EXPECT_THROW(BuildSurvivalTable(std::span(&invalid, 1)), InvalidArgument);
}

TEST(SurvivalTableTest, MeansStayWithinBounds) {
  std::mt19937_64 rng(21);
  for (int run = 0; run < 100; ++run) {
    std::vector<std::vector<std::optional<double>>> trials(1 + rng() % 6);
    for (auto& bugs : trials) {
      for (int b = 0; b < 4; ++b) {
        if (rng() % 3 == 0) {
          bugs.push_back(std::nullopt);
        } else {
          bugs.push_back(static_cast<double>(1 + rng() % 100));
        }
      }
    }
    const std::vector<CampaignRecord> recs = {MakeRecord("f", 100, trials)};
    const SurvivalTable t = BuildSurvivalTable(recs);
    for (size_t i = 1; i < t.rows.size(); ++i) {
      EXPECT_LE(t.rows[i - 1].mean_trigger, t.rows[i].mean_trigger);
    }
    for (const SurvivalRow& row : t.rows) {
      const uint32_t id = static_cast<uint32_t>(row.bug[1] - '0');
      double lo = 100;
      for (const auto& bugs : trials) lo = std::min(lo, bugs[id].value_or(100));
      EXPECT_GE(row.mean_trigger, lo);
      EXPECT_LE(row.mean_trigger, 100);
      EXPECT_LE(row.mean_reach, row.mean_trigger);
    }
  }
}

TEST(BugCountTest, MeanAndSampleSd) {
  const std::vector<double> same = {3, 3, 3}, two = {2, 4}, one = {7};
  EXPECT_EQ(ComputeMeanSd(same).sd, 0);
  EXPECT_DOUBLE_EQ(ComputeMeanSd(two).mean, 3);
  EXPECT_DOUBLE_EQ(ComputeMeanSd(two).sd, std::sqrt(2.0));
  EXPECT_EQ(ComputeMeanSd(one).sd, 0);
}

TEST(BugCountTest, CountsAndMatrix) {
  const std::vector<CampaignRecord> recs = {
      MakeRecord("a", 60, {{1.0, 2.0}, {1.0, std::nullopt},
                           {std::nullopt, std::nullopt}}),
      MakeRecord("b", 60, {{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}})};
  EXPECT_EQ(TriggeredCounts(recs[0]), (std::vector<double>{2, 1, 0}));
  const auto stats = BugCountStatsFor(recs);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_DOUBLE_EQ(stats[0].stats.mean, 1);
  EXPECT_DOUBLE_EQ(stats[1].stats.sd, 0);
  const auto cells = SignificanceMatrix(stats);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].fuzzer_a, "a");
  EXPECT_EQ(cells[1].fuzzer_a, "b");
  EXPECT_NEAR(cells[0].test.u + cells[1].test.u, 9, 1e-12);
  const std::string csv = SignificanceCsv(cells);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "target,fuzzer_a,fuzzer_b,u,p,method,identical,significant");
}

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("gtbench_an_" + std::to_string(getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

TEST(AnalyzeTest, WritesTablesAndPlots) {
  const std::vector<CampaignRecord> recs = {
      MakeRecord("a", 60, {{10.0, std::nullopt}, {20.0, 30.0}}),
      MakeRecord("b", 60, {{15.0, std::nullopt}, {std::nullopt, 40.0}})};
  const fs::path out = TempDir("out");
  const auto files = Analyze(recs, out, true);
  for (const char* name : {"survival_table.csv", "bug_counts.csv",
                           "signif_matrix.csv", "survival_B0.svg",
                           "survival_B1.svg"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  EXPECT_EQ(files.size(), 5u);
  // Recount triggered bugs from the bug count table.
  std::ifstream in(out / "bug_counts.csv");
  std::string line;
  std::getline(in, line);
  size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    ASSERT_EQ(f.size(), 6u);
    const CampaignRecord& r = f[0] == "a" ? recs[0] : recs[1];
    std::stringstream counts(f[5]);
    size_t trial = 0;
    for (double c; counts >> c; ++trial) {
      double expect = 0;
      for (const BugTimes& b : r.trials[trial].bugs) expect += b.trigger ? 1 : 0;
      EXPECT_EQ(c, expect);
    }
    EXPECT_EQ(trial, 2u);
  }
  EXPECT_EQ(rows, 2u);
  const std::string svg = [&] {
    std::ifstream s(out / "survival_B0.svg");
    return std::string((std::istreambuf_iterator<char>(s)), {});
  }();
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  fs::remove_all(out);
}

}  // namespace
}  // namespace gtbench
