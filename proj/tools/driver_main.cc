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

// Standalone driver for one built-in target. Reads the input from a file
// argument or stdin, runs it once and reports through the canary registry
// named by BENCH_REPORT_PATH. Exit status: 0 clean, 77 fatal canary, 78
// modeled fault (detect mode).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "gtbench/canary/registry.h"
#include "gtbench/diversity/feature_matrix.h"
#include "gtbench/targets/suite.h"

#ifndef GTBENCH_DRIVER_TARGET
#error "GTBENCH_DRIVER_TARGET must name a target"
#endif

namespace {

constexpr int kModeledFaultExitCode = 78;

}  // namespace

int main(int argc, char** argv) {
  using namespace gtbench;
  const Target& target = GetTarget(GTBENCH_DRIVER_TARGET);

  CLI::App app{std::string("Runs one input through ") +
               std::string(target.name())};
  std::string mode_name;
  std::string profile_path;
  std::string input_path;
  app.add_option("--mode", mode_name, "normal, fatal or detect")
      ->check(CLI::IsMember({"normal", "fatal", "detect"}));
  app.add_option("--profile", profile_path,
                 "write operation counts as a profile JSON");
  app.add_option("input", input_path, "input file (stdin when omitted)");
  CLI11_PARSE(app, argc, argv);

  Bytes input;
  try {
    if (input_path.empty() || input_path == "-") {
      input.assign(std::istreambuf_iterator<char>(std::cin),
                   std::istreambuf_iterator<char>());
    } else {
      input = ReadFileBytes(input_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "driver: " << e.what() << "\n";
    return 2;
  }

  BugRegistry registry = BugRegistry::FromEnvironment(target.bug_count());
  ExecMode mode = registry.mode() == CanaryMode::kFatal ? ExecMode::kFatal
                                                        : ExecMode::kNormal;
  if (mode_name == "normal") mode = ExecMode::kNormal;
  if (mode_name == "fatal") mode = ExecMode::kFatal;
  if (mode_name == "detect") mode = ExecMode::kDetect;

  OpProfile ops{};
  ExecOptions options;
  options.profile = &ops;
  const ExecExit exit = RunOnce(target, input, mode, registry, options);
  registry.Flush();

  if (!profile_path.empty()) {
    FeatureProfile profile;
    profile.subject = std::string(target.name());
    profile.family = "gtbench";
    profile.seed = input_path.empty() ? "stdin" : input_path;
    for (size_t i = 0; i < kOpCategoryCount; ++i) {
      profile.counts[std::string(OpCategoryName(static_cast<OpCategory>(i)))] =
          static_cast<double>(ops[i]);
    }
    std::ofstream(profile_path) << ProfileToJson(profile) << "\n";
  }

  switch (exit.kind) {
    case ExitKind::kClean:
      return 0;
    case ExitKind::kFatalCanary:
      std::fprintf(stderr, "fatal canary: %s\n",
                   std::string(target.bugs()[exit.bug_id].tag).c_str());
      std::fflush(stderr);
      return kFatalCanaryExitCode;
    case ExitKind::kModeledFault:
      std::fprintf(stderr, "modeled fault (%s): %s\n",
                   std::string(FaultKindName(exit.fault)).c_str(),
                   std::string(target.bugs()[exit.bug_id].tag).c_str());
      std::fflush(stderr);
      return kModeledFaultExitCode;
  }
  return 0;
}
