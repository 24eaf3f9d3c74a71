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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "gtbench/analytics/analyze.h"
#include "gtbench/canary/registry.h"
#include "gtbench/common/errors.h"
#include "gtbench/diversity/feature_matrix.h"
#include "gtbench/diversity/pca.h"
#include "gtbench/fuzzer/campaign.h"
#include "gtbench/orchestrator/record.h"
#include "gtbench/orchestrator/trials.h"
#include "gtbench/targets/suite.h"

namespace {

namespace fs = std::filesystem;
using namespace gtbench;

uint32_t ResolveBug(const Target& target, const std::string& bug) {
  for (const BugDescriptor& b : target.bugs()) {
    if (b.tag == bug) return b.id;
  }
  try {
    size_t used = 0;
    const unsigned long id = std::stoul(bug, &used);
    if (used == bug.size() && id < target.bug_count()) {
      return static_cast<uint32_t>(id);
    }
  } catch (const std::exception&) {
  }
  throw InvalidArgument("unknown bug '" + bug + "' for " +
                        std::string(target.name()));
}

int ListBugsCommand(const std::string& target, bool as_json) {
  const BugCatalog catalog =
      ListBugs(target.empty() ? std::nullopt
                              : std::optional<std::string_view>(target));
  if (as_json) {
    std::cout << CatalogJson(catalog) << "\n";
    return 0;
  }
  for (const BugDescriptor& b : catalog.bugs) {
    std::printf("%-12s %-5s %-26s %-7s %-6s %s\n",
                std::string(b.target).c_str(), std::string(b.tag).c_str(),
                std::string(BugClassName(b.bug_class)).c_str(),
                b.shallow ? "shallow" : "deep", b.has_pov ? "pov" : "no-pov",
                std::string(b.trigger).c_str());
  }
  std::printf("%zu bugs in %zu targets (%.2f per target)\n",
              catalog.bugs.size(), catalog.target_count, catalog.density);
  return 0;
}

int PovCommand(const std::string& target_name, const std::string& bug,
               const std::string& out) {
  const Target& target = GetTarget(target_name);
  const Bytes pov = GetPov(target_name, ResolveBug(target, bug));
  WriteFileBytes(out, pov);
  return 0;
}

int SeedsCommand(const std::string& target_name, const fs::path& out) {
  const Target& target = GetTarget(target_name);
  fs::create_directories(out);
  const std::vector<Bytes> seeds = target.Seeds();
  for (size_t i = 0; i < seeds.size(); ++i) {
    WriteFileBytes(out / ("seed_" + std::to_string(i)), seeds[i]);
  }
  return 0;
}

int ExecCommand(const std::string& target_name, const std::string& input_path,
                const std::string& mode_name, const std::string& report) {
  const Target& target = GetTarget(target_name);
  const ExecMode mode = mode_name == "fatal"    ? ExecMode::kFatal
                        : mode_name == "detect" ? ExecMode::kDetect
                                                : ExecMode::kNormal;
  BugRegistry registry =
      report.empty()
          ? BugRegistry::CreateInMemory(target.bug_count(), CanaryMode::kNormal)
          : BugRegistry::Create(target.bug_count(), CanaryMode::kNormal,
                                report);
  const ExecExit exit =
      RunOnce(target, ReadFileBytes(input_path), mode, registry);
  registry.Flush();
  for (const BugDescriptor& b : target.bugs()) {
    std::printf("%s reached=%llu triggered=%llu\n",
                std::string(b.tag).c_str(),
                static_cast<unsigned long long>(registry.reached(b.id)),
                static_cast<unsigned long long>(registry.triggered(b.id)));
  }
  std::printf("faulty=%d exit=%s\n", registry.faulty() ? 1 : 0,
              exit.kind == ExitKind::kClean         ? "clean"
              : exit.kind == ExitKind::kFatalCanary ? "fatal-canary"
                                                    : "modeled-fault");
  return 0;
}

struct FuzzArgs {
  std::string target;
  std::string seeds;
  double duration = 0;
  uint64_t execs = 0;
  uint64_t rng_seed = 0;
  std::string out;
  bool cmplog = false;
  bool no_det = false;
};

int FuzzCommand(const FuzzArgs& args) {
  const Target& target = GetTarget(args.target);
  CampaignConfig seed_config;
  seed_config.target = args.target;
  seed_config.seeds_dir = args.seeds;
  const std::vector<Bytes> seeds = LoadSeeds(seed_config, target);
  CampaignOptions options;
  options.max_seconds = args.duration;
  options.max_execs = args.execs;
  options.rng_seed = args.rng_seed;
  options.cmplog = args.cmplog;
  options.deterministic = !args.no_det;
  const CampaignResult result = FuzzCampaign(target, seeds, options);
  WriteCampaignOutput(result, args.out);
  std::printf("executions=%llu exec/s=%.0f queue=%zu crashes=%zu\n",
              static_cast<unsigned long long>(result.stats.executions),
              result.stats.execs_per_second, result.stats.queue_size,
              result.stats.crash_count);
  return 0;
}

int RunCommand(const std::string& config_path, const std::string& out) {
  CampaignConfig config = LoadConfig(config_path);
  if (!out.empty()) config.out_dir = out;
  if (config.out_dir.empty()) {
    throw InvalidArgument("no output directory: set out_dir or pass --out");
  }
  const CampaignRecord record = RunCampaign(config);
  std::printf("%s on %s: %zu valid trials, %zu invalid\n",
              record.fuzzer.c_str(), record.target.c_str(),
              record.valid_trials(), record.invalid_trials());
  for (const TrialRecord& t : record.trials) {
    if (!t.valid) {
      std::printf("  trial %u invalid: %s\n", t.trial_id,
                  t.invalid_reason.c_str());
    }
  }
  return 0;
}

int AnalyzeCommand(const std::string& records_dir, const std::string& out,
                   bool plots) {
  const std::vector<CampaignRecord> records = LoadRecords(records_dir);
  for (const fs::path& p : Analyze(records, out, plots)) {
    std::printf("%s\n", p.string().c_str());
  }
  return 0;
}

int PcaCommand(const std::string& profiles_dir, size_t k,
               const std::string& out) {
  const std::vector<FeatureProfile> profiles = ReadProfiles(profiles_dir);
  const PcaResult result = Pca(BuildMatrix(profiles), k);
  for (const std::string& d : result.dropped_categories) {
    std::fprintf(stderr, "warning: dropped zero-variance category %s\n",
                 d.c_str());
  }
  std::vector<fs::path> files = WritePcaTables(result, out);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 1; a + 1 <= k; a += 2) pairs.emplace_back(a, a + 1);
  for (const fs::path& p : ScatterExport(result, pairs, out)) {
    files.push_back(p);
  }
  for (const fs::path& p : files) std::printf("%s\n", p.string().c_str());
  return 0;
}

int ProfileCommand(const std::string& target_name, const fs::path& out) {
  fs::create_directories(out);
  const std::vector<const Target*> targets =
      target_name.empty()
          ? std::vector<const Target*>(AllTargets().begin(), AllTargets().end())
          : std::vector<const Target*>{&GetTarget(target_name)};
  for (const Target* t : targets) {
    const std::vector<Bytes> seeds = t->Seeds();
    for (size_t i = 0; i < seeds.size(); ++i) {
      const std::string name = std::string(t->name()) + "_seed" +
                               std::to_string(i);
      std::ofstream(out / (name + ".json"))
          << ProfileToJson(TargetProfile(*t, seeds[i], name)) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-truth fuzzing benchmark harness"};
  app.require_subcommand(1);

  std::string target, bug, out, input, mode = "normal", report, config,
                                       records, profiles;
  bool as_json = false, plots = false;
  size_t k = 2;
  FuzzArgs fuzz;

  auto* list = app.add_subcommand("list-bugs", "Print the bug catalog");
  list->add_option("--target", target);
  list->add_flag("--json", as_json);

  auto* pov = app.add_subcommand("pov", "Write a bug's proof of vulnerability");
  pov->add_option("--target", target)->required();
  pov->add_option("--bug", bug, "tag or numeric id")->required();
  pov->add_option("--out", out)->required();

  auto* seeds = app.add_subcommand("seeds", "Write a target's seed inputs");
  seeds->add_option("--target", target)->required();
  seeds->add_option("--out", out)->required();

  auto* exec = app.add_subcommand("exec", "Run one input and print counters");
  exec->add_option("--target", target)->required();
  exec->add_option("--input", input)->required();
  exec->add_option("--mode", mode)->check(
      CLI::IsMember({"normal", "fatal", "detect"}));
  exec->add_option("--report", report, "canary report file to write");

  auto* fz = app.add_subcommand("fuzz", "Run one fuzzing campaign");
  fz->add_option("--target", fuzz.target)->required();
  fz->add_option("--seeds", fuzz.seeds, "seed directory (default: built-in)");
  fz->add_option("--duration", fuzz.duration, "seconds");
  fz->add_option("--execs", fuzz.execs, "execution budget");
  fz->add_option("--rng-seed", fuzz.rng_seed);
  fz->add_option("--out", fuzz.out)->required();
  fz->add_flag("--cmplog", fuzz.cmplog, "comparison progress as coverage");
  fz->add_flag("--no-det", fuzz.no_det, "skip deterministic stages");

  auto* run = app.add_subcommand("run", "Run the trials of a campaign config");
  run->add_option("--config", config)->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "overrides out_dir");

  auto* analyze = app.add_subcommand("analyze", "Survival and significance");
  analyze->add_option("--records", records)->required();
  analyze->add_option("--out", out)->required();
  analyze->add_flag("--plots", plots);

  auto* pca = app.add_subcommand("pca", "Workload diversity PCA");
  pca->add_option("--profiles", profiles)->required();
  pca->add_option("--k", k)->required();
  pca->add_option("--out", out)->required();

  auto* profile =
      app.add_subcommand("profile", "Write operation profiles of the seeds");
  profile->add_option("--target", target);
  profile->add_option("--out", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) return ListBugsCommand(target, as_json);
    if (*pov) return PovCommand(target, bug, out);
    if (*seeds) return SeedsCommand(target, out);
    if (*exec) return ExecCommand(target, input, mode, report);
    if (*fz) {
      if (fuzz.duration <= 0 && fuzz.execs == 0) {
        throw InvalidArgument("fuzz needs --duration or --execs");
      }
      return FuzzCommand(fuzz);
    }
    if (*run) return RunCommand(config, out);
    if (*analyze) return AnalyzeCommand(records, out, plots);
    if (*pca) return PcaCommand(profiles, k, out);
    if (*profile) return ProfileCommand(target, out);
  } catch (const gtbench::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
