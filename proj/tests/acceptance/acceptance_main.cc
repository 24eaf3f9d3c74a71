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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "gtbench/analytics/kaplan_meier.h"
#include "gtbench/analytics/mann_whitney.h"
#include "gtbench/analytics/survival_table.h"
#include "gtbench/canary/registry.h"
#include "gtbench/canary/report.h"
#include "gtbench/diversity/pca.h"
#include "gtbench/orchestrator/config.h"
#include "gtbench/orchestrator/triage.h"
#include "gtbench/orchestrator/trials.h"
#include "gtbench/targets/chunk_parser.h"
#include "gtbench/targets/kv_parser.h"
#include "gtbench/targets/suite.h"
#include "oracles/oracles.h"

namespace gtbench {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     fmt::format("gtbench_accept_{}_{}", getpid(), name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// 1. Canary model equivalence, runtime < 5 s.
Outcome CanaryModel() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  size_t mismatches = 0, property = 0;
  constexpr int kRuns = 50;
  for (int run = 0; run < kRuns; ++run) {
    const auto n = static_cast<uint32_t>(1 + rng() % 16);
    BugRegistry reg = BugRegistry::CreateInMemory(n, CanaryMode::kNormal);
    oracle::ReferenceCanary model(n);
    const uint64_t p_true = 1 + rng() % 100;
    for (int i = 0; i < 10000; ++i) {
      const auto id = static_cast<uint32_t>(rng() % n);
      const bool cond = rng() % 2000 < p_true;
      const uint64_t r0 = reg.reached(id), t0 = reg.triggered(id);
      const bool frozen = reg.faulty();
      reg.Log(id, cond);
      model.Log(id, cond);
      if (reg.reached(id) < r0 || reg.triggered(id) < t0 ||
          reg.triggered(id) > reg.reached(id)) {
        ++property;
      }
      if (frozen && (reg.reached(id) != r0 || reg.triggered(id) != t0)) {
        ++property;
      }
    }
    for (uint32_t id = 0; id < n; ++id) {
      if (reg.reached(id) != model.reached[id] ||
          reg.triggered(id) != model.triggered[id]) {
        ++mismatches;
      }
    }
    if (reg.faulty() != model.faulty) ++mismatches;
  }
  const double s = Seconds(start);
  return {mismatches == 0 && property == 0 && s < 5.0,
          fmt::format("{} runs x 10000 events, {} mismatches, {} property "
                      "violations, {:.2f}s (< 5s)",
                      kRuns, mismatches, property, s)};
}

// 2. Report format round trip and header bytes.
Outcome ReportFormat() {
  std::mt19937_64 rng(7);
  size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    RegistrySnapshot s;
    s.bugs.resize(1 + rng() % 32);
    for (BugCounters& c : s.bugs) {
      c.reached = rng() >> (rng() % 64);
      c.triggered = rng() >> (rng() % 64);
    }
    s.faulty = (rng() & 1) != 0;
    const Bytes once = EncodeReport(s);
    if (EncodeReport(DecodeReport(once)) != once) ++bad;
  }
  BugRegistry reg = BugRegistry::CreateInMemory(5, CanaryMode::kNormal);
  const Bytes expected = {'G', 'T', 'B', 'M', 1, 0, 0, 0, 5, 0,
                          0,   0,   0,   0,   0, 0, 0, 0, 0, 0};
  const auto b = reg.bytes();
  const bool header = b.size() == 20 + 16 * 5 &&
                      std::equal(expected.begin(), expected.end(), b.begin());
  return {bad == 0 && header,
          fmt::format("1000 registries, {} not byte-identical; header {}", bad,
                      header ? "matches" : "differs")};
}

// 3. Weird-state pair.
Outcome WeirdState() {
  const Bytes pov = GetPov("kv-parser", KvParserTarget::kFieldOverflow);
  // Length of the quoted string field.
  const std::string text(pov.begin(), pov.end());
  const size_t open = text.find('"'), close = text.find('"', open + 1);
  const size_t field = open == std::string::npos || close == std::string::npos
                           ? 0
                           : close - open - 1;
  std::string detail = fmt::format("string field length {}", field);
  bool ok = field == 16;
  for (ExecMode mode : {ExecMode::kNormal, ExecMode::kFatal}) {
    const ExecutionOutcome out =
        RunDriver(GetTarget("kv-parser"), pov, mode);
    const BugCounters& w1 = out.snapshot.bugs[KvParserTarget::kFieldOverflow];
    const BugCounters& w2 =
        out.snapshot.bugs[KvParserTarget::kZeroLengthRepeat];
    ok = ok && w1.triggered >= 1 && w2.reached == 0 && w2.triggered == 0;
    detail += fmt::format("; {}: W1 triggered={} W2 reached={} triggered={}",
                          ExecModeName(mode), w1.triggered, w2.reached,
                          w2.triggered);
  }
  return {ok, detail};
}

// Replays `pov` in a child process with a file-backed fatal registry.
int FatalReplayStatus(const Target& target, const Bytes& pov,
                      const fs::path& report) {
  std::fflush(stdout);
  const pid_t pid = fork();
  if (pid == 0) {
    BugRegistry reg =
        BugRegistry::Create(target.bug_count(), CanaryMode::kFatal, report);
    ExecContext ctx(reg, ExecMode::kFatal, target.bugs(), {});
    target.Execute(pov, ctx);
    reg.Flush();
    _exit(0);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 4. PoV soundness, runtime < 10 s.
Outcome PovSoundness() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = ScratchDir("pov");
  size_t povs = 0;
  std::vector<std::string> failures;
  for (const Target* t : AllTargets()) {
    for (const BugDescriptor& bug : t->bugs()) {
      if (!bug.has_pov) continue;
      ++povs;
      const Bytes pov = *t->Pov(bug.id);
      const ExecutionOutcome normal = RunDriver(*t, pov, ExecMode::kNormal);
      uint32_t triggered_bugs = 0;
      for (const BugCounters& c : normal.snapshot.bugs) {
        triggered_bugs += c.triggered > 0 ? 1 : 0;
      }
      const bool first_is_own =
          normal.snapshot.bugs[bug.id].triggered > 0 && triggered_bugs == 1;
      const fs::path report = dir / std::string(bug.tag);
      const int status = FatalReplayStatus(*t, pov, report);
      const RegistrySnapshot fatal = ReadReportFile(report);
      const bool fatal_ok = status == kFatalCanaryExitCode &&
                            fatal.bugs[bug.id].triggered == 1 && fatal.faulty;
      if (!first_is_own || !fatal_ok) {
        failures.push_back(fmt::format("{}(exit {})", bug.tag, status));
      }
    }
  }
  fs::remove_all(dir);
  const double s = Seconds(start);
  return {failures.empty() && povs > 0 && s < 10.0,
          fmt::format("{} PoVs, failures [{}], {:.2f}s (< 10s)", povs,
                      fmt::join(failures, " "), s)};
}

// 5. Detection gap on the semantic bug.
Outcome DetectionGap() {
  const Target& t = GetTarget("chunk-parser");
  const uint32_t id = ChunkParserTarget::kPaletteSizeMismatch;
  const Bytes pov = *t.Pov(id);
  const ExecutionOutcome normal = RunDriver(t, pov, ExecMode::kNormal);
  const std::vector<NamedInput> crashes = {{"pov", pov}};
  const TriageResult triage = ReplayTriage(t, crashes);
  const bool ok = normal.snapshot.bugs[id].triggered > 0 &&
                  triage.detected.empty() &&
                  triage.triggered_undetected == std::set<uint32_t>{id};
  return {ok, fmt::format("{} triggered={}, detected={}, triggered_undetected={}",
                          t.bugs()[id].tag, normal.snapshot.bugs[id].triggered,
                          triage.detected.size(),
                          triage.triggered_undetected.size())};
}

// 6. Kaplan-Meier oracle equivalence.
Outcome KmOracle() {
  double worst = 0;
  size_t cases = 0;
  for (size_t n = 1; n <= 6; ++n) {
    std::vector<size_t> times(n, 1);
    while (true) {
      for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<oracle::Obs> obs;
        std::vector<Observation> mine;
        for (size_t i = 0; i < n; ++i) {
          const bool seen = ((mask >> i) & 1u) != 0;
          obs.push_back({static_cast<double>(times[i]), seen});
          mine.push_back({static_cast<double>(times[i]), seen});
        }
        const SurvivalCurve c = KaplanMeier(mine);
        for (double t = 0; t <= 7; t += 0.5) {
          worst = std::max(worst, std::abs(c.At(t) - oracle::KmAt(obs, t)));
        }
        ++cases;
      }
      size_t i = n;
      while (i > 0 && times[i - 1] == 6) --i;
      if (i == 0) break;
      ++times[i - 1];
      for (size_t j = i; j < n; ++j) times[j] = times[i - 1];
    }
  }
  const std::vector<Observation> censored = {{10, false}, {20, false},
                                             {30, false}};
  const SurvivalCurve flat = KaplanMeier(censored);
  bool ones = true;
  for (double t = 0; t <= 40; t += 1) ones = ones && flat.At(t) == 1.0;
  return {worst <= 1e-12 && ones,
          fmt::format("{} observation sets, max |error| {:.3g} (<= 1e-12); "
                      "all-censored S == 1: {}",
                      cases, worst, ones)};
}

// 7. Mann-Whitney oracle equivalence.
Outcome MwuOracle() {
  double worst = 0;
  size_t cases = 0;
  std::mt19937_64 rng(77);
  for (size_t n1 = 1; n1 <= 5; ++n1) {
    for (size_t n2 = 1; n2 <= 5; ++n2) {
      // Every split of the ranks 0..n1+n2-1 into the two samples.
      const size_t n = n1 + n2;
      for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<size_t>(__builtin_popcount(mask)) != n1) continue;
        std::vector<double> a, b;
        const double scale = 1 + static_cast<double>(rng() % 5);
        for (size_t r = 0; r < n; ++r) {
          ((mask >> r) & 1u ? a : b).push_back(scale * static_cast<double>(r));
        }
        worst = std::max(
            worst, std::abs(MannWhitneyU(a, b).p - oracle::MwuEnumerationP(a, b)));
        ++cases;
      }
    }
  }
  const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  const double p = MannWhitneyU(a, b).p;
  const RankTestResult same = MannWhitneyU(a, a);
  const bool ok = worst <= 1e-12 && std::abs(p - 0.1) <= 1e-12 &&
                  same.identical && same.p == 1.0;
  return {ok, fmt::format("{} splits, max |error| {:.3g}; p([1,2,3],[4,5,6]) = "
                          "{}; identical marker {}",
                          cases, worst, p, same.identical)};
}

// 8. Untriggered bug reports the trial duration.
Outcome SurvivalRule() {
  CampaignRecord r;
  r.fuzzer = "baseline";
  r.target = "synthetic";
  r.duration_s = 86400;
  r.poll_interval_s = 900;
  r.bug_tags = {"S0", "S1"};
  for (uint32_t i = 0; i < 10; ++i) {
    TrialRecord t;
    t.trial_id = i;
    t.bugs = {{900.0 * (i + 1), 1800.0 * (i + 1)}, {std::nullopt, std::nullopt}};
    r.trials.push_back(t);
  }
  const SurvivalTable table = BuildSurvivalTable(std::span(&r, 1));
  const SurvivalRow* row = nullptr;
  for (const SurvivalRow& x : table.rows) {
    if (x.bug == "S1") row = &x;
  }
  const bool ok = row != nullptr && row->cells[0].mean_trigger == 86400 &&
                  FormatSurvivalTime(row->cells[0].mean_trigger) == "24.00h";
  return {ok, fmt::format("untriggered mean T = {} ({})",
                          row ? row->cells[0].mean_trigger : -1.0,
                          row ? FormatSurvivalTime(row->cells[0].mean_trigger)
                              : "missing")};
}

struct DeskCampaign {
  CampaignRecord record;
  fs::path dir;
  double seconds = 0;
};

DeskCampaign RunDeskCampaign() {
  DeskCampaign d;
  d.dir = ScratchDir("desk");
  CampaignConfig c;
  c.target = "chunk-parser";
  c.fuzzer = "baseline";
  c.trials = 5;
  c.duration_s = 60;
  c.poll_interval_s = 5;
  c.execs = 200000;
  c.rng_seed = 1;
  c.workers = 5;
  c.cmplog = false;
  c.out_dir = d.dir;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Bytes> seeds = {ChunkParserTarget::ValidSeed()};
  d.record = RunTrials(c, GetTarget("chunk-parser"), seeds);
  d.seconds = Seconds(start);
  return d;
}

// 9. End-to-end desk campaign.
Outcome DeskCampaignCheck(const DeskCampaign& d) {
  const CampaignRecord& r = d.record;
  const Target& t = GetTarget("chunk-parser");
  bool shallow_ok = r.valid_trials() == 5;
  std::vector<std::string> shallow;
  for (const BugDescriptor& bug : t.bugs()) {
    if (!bug.shallow) continue;
    size_t hit = 0;
    for (const TrialRecord& trial : r.trials) {
      hit += trial.valid && trial.bugs[bug.id].trigger ? 1 : 0;
    }
    shallow.push_back(fmt::format("{}={}/5", bug.tag, hit));
    shallow_ok = shallow_ok && hit == 5;
  }
  size_t magic = 0;
  for (const TrialRecord& trial : r.trials) {
    magic += trial.bugs[ChunkParserTarget::kRowFactorDivZero].trigger ? 1 : 0;
  }
  const bool ok = shallow_ok && magic <= 1 && d.seconds <= 600;
  return {ok, fmt::format("5 trials x 200000 execs (virtual 60s): shallow "
                          "[{}]; magic-value {} triggered in {}/5 (<= 1); "
                          "{:.1f}s (<= 600s)",
                          fmt::join(shallow, " "),
                          t.bugs()[ChunkParserTarget::kRowFactorDivZero].tag,
                          magic, d.seconds)};
}

// 10. PCA oracle equivalence.
Outcome PcaOracle() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 50);
  double worst_value = 0, worst_vector = 0, worst_score = 0, worst_sum = 0;
  size_t matrices = 0;
  for (int run = 0; run < 100; ++run) {
    const size_t subjects = 3 + rng() % 6;  // 3..8
    const size_t cats = 2 + rng() % 11;     // 2..12
    FeatureMatrix m;
    m.values = DenseMatrix(cats, subjects);
    oracle::Mat x(subjects, std::vector<double>(cats));
    for (size_t i = 0; i < cats; ++i) m.categories.push_back(fmt::format("c{}", i));
    for (size_t j = 0; j < subjects; ++j) {
      m.subjects.push_back(fmt::format("s{}", j));
      m.families.push_back("f");
    }
    for (size_t i = 0; i < cats; ++i) {
      for (size_t j = 0; j < subjects; ++j) m.values(i, j) = x[j][i] = u(rng);
    }
    const oracle::PcaOracle want = oracle::BruteForcePca(x);
    const size_t rank = std::min(subjects - 1, cats);
    const PcaResult got = Pca(m, rank);
    double total = 0, sum = 0;
    for (double v : want.values) total += v;
    for (size_t c = 0; c < rank; ++c) {
      sum += got.explained[c];
      worst_value = std::max(worst_value,
                             std::abs(got.eigenvalues[c] - want.values[c]) / total);
      double dot = 0;
      for (size_t i = 0; i < cats; ++i) dot += got.loadings(i, c) * want.vectors[i][c];
      const double sign = dot < 0 ? -1 : 1;
      for (size_t i = 0; i < cats; ++i) {
        worst_vector = std::max(
            worst_vector, std::abs(got.loadings(i, c) - sign * want.vectors[i][c]));
      }
      for (size_t j = 0; j < subjects; ++j) {
        double s = 0;
        for (size_t i = 0; i < cats; ++i) s += want.z[j][i] * want.vectors[i][c];
        worst_score = std::max(worst_score,
                               std::abs(got.scores(j, c) - sign * s) /
                                   (1 + std::abs(s)));
      }
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1));
    ++matrices;
  }
  FeatureMatrix r1;
  r1.categories = {"a", "b", "c", "d"};
  for (size_t j = 0; j < 6; ++j) {
    r1.subjects.push_back(fmt::format("s{}", j));
    r1.families.push_back("f");
  }
  r1.values = DenseMatrix(4, 6);
  for (size_t j = 0; j < 6; ++j) {
    const double t = std::sqrt(static_cast<double>(j) + 2);
    for (size_t i = 0; i < 4; ++i) {
      r1.values(i, j) = static_cast<double>(i + 1) * t + static_cast<double>(i);
    }
  }
  const PcaResult one = Pca(r1, 1);
  const bool rank1 = one.rank == 1 && std::abs(one.explained[0] - 1) <= 1e-9;
  const double worst = std::max({worst_value, worst_vector, worst_score});
  return {worst <= 1e-9 && worst_sum <= 1e-9 && rank1,
          fmt::format("{} matrices, max error eigenvalue {:.2g} loading {:.2g} "
                      "score {:.2g} (<= 1e-9); |sum explained - 1| {:.2g}; "
                      "rank-1 first component {:.6f}",
                      matrices, worst_value, worst_vector, worst_score,
                      worst_sum, one.explained[0])};
}

// 11. Orchestrator contracts on the desk campaign's events.csv.
Outcome OrchestratorContracts(const DeskCampaign& d) {
  std::ifstream in(d.dir / "events.csv");
  std::string line;
  std::getline(in, line);
  struct Pair {
    int reach = 0, trigger = 0;
    double reach_t = 0, trigger_t = 0;
    bool reach_censored = false, trigger_censored = false;
  };
  std::map<std::pair<std::string, std::string>, Pair> pairs;
  size_t rows = 0, off_grid = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() != 5) return {false, "malformed events.csv row: " + line};
    ++rows;
    Pair& p = pairs[{f[0], f[1]}];
    const double t = std::stod(f[3]);
    const bool censored = f[4] == "1";
    const double k = t / d.record.poll_interval_s;
    if (std::abs(k - std::round(k)) > 1e-9) ++off_grid;
    if (f[2] == "R") {
      ++p.reach;
      p.reach_t = t;
      p.reach_censored = censored;
    } else {
      ++p.trigger;
      p.trigger_t = t;
      p.trigger_censored = censored;
    }
  }
  const size_t expected =
      d.record.valid_trials() * d.record.bug_tags.size();
  size_t bad_count = 0, bad_order = 0;
  for (const auto& [key, p] : pairs) {
    if (p.reach != 1 || p.trigger != 1) ++bad_count;
    if (!p.trigger_censored &&
        (p.reach_censored || p.reach_t > p.trigger_t)) {
      ++bad_order;
    }
  }
  const bool ok = pairs.size() == expected && expected > 0 && bad_count == 0 &&
                  bad_order == 0 && off_grid == 0;
  return {ok, fmt::format("{} rows over {} (trial, bug) pairs (expected {}); "
                          "count violations {}; trigger before reach {}; "
                          "off-grid times {}",
                          rows, pairs.size(), expected, bad_count, bad_order,
                          off_grid)};
}

}  // namespace
}  // namespace gtbench

int main() {
  using gtbench::Outcome;
  int failed = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name,
                o.detail.c_str());
    std::fflush(stdout);
  };
  report(1, "canary-model-equivalence", gtbench::CanaryModel);
  report(2, "report-format-round-trip", gtbench::ReportFormat);
  report(3, "weird-state-reproduction", gtbench::WeirdState);
  report(4, "pov-soundness", gtbench::PovSoundness);
  report(5, "detection-gap", gtbench::DetectionGap);
  report(6, "km-oracle-equivalence", gtbench::KmOracle);
  report(7, "mwu-oracle-equivalence", gtbench::MwuOracle);
  report(8, "survival-table-censoring", gtbench::SurvivalRule);
  gtbench::DeskCampaign desk;
  std::string desk_error;
  try {
    desk = gtbench::RunDeskCampaign();
  } catch (const std::exception& e) {
    desk_error = e.what();
  }
  auto with_desk = [&](Outcome (*f)(const gtbench::DeskCampaign&)) {
    return [&, f]() -> Outcome {
      if (!desk_error.empty()) return {false, "campaign failed: " + desk_error};
      return f(desk);
    };
  };
  report(9, "desk-campaign", with_desk(gtbench::DeskCampaignCheck));
  report(10, "pca-oracle-equivalence", gtbench::PcaOracle);
  report(11, "orchestrator-contracts", with_desk(gtbench::OrchestratorContracts));
  std::filesystem::remove_all(desk.dir);
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
