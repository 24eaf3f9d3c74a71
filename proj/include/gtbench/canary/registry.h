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

#ifndef GTBENCH_CANARY_REGISTRY_H_
#define GTBENCH_CANARY_REGISTRY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>

#include "gtbench/canary/report.h"

namespace gtbench {

enum class CanaryMode { kNormal, kFatal };

// Process exit status used when a fatal canary fires.
inline constexpr int kFatalCanaryExitCode = 77;

inline constexpr char kReportPathEnv[] = "BENCH_REPORT_PATH";
inline constexpr char kFatalEnv[] = "BENCH_FATAL";

// Per-execution bug oracle state. The counters live directly in the report
// bytes (a shared file mapping or a private heap buffer), so a monitor reading
// the report file sees them without any extra publishing step.
//
// Update rule for Log(id, condition), applied without data-dependent branches:
//   reached[id]   += 1         & !faulty
//   triggered[id] += condition & !faulty
//   faulty        |= condition
//
// Single writer. Not safe to share across threads.
class BugRegistry {
 public:
  // Called instead of terminating when a fatal canary fires. A handler that
  // returns normally still ends in process termination with status 77;
  // in-process drivers throw from it to unwind instead.
  using FatalHandler = std::function<void(uint32_t bug_id)>;

  // File-backed registry. The file is created or truncated to the exact
  // report size. Throws InvalidArgument for bug_count == 0 and InitError when
  // the file cannot be created or mapped.
  static BugRegistry Create(uint32_t bug_count, CanaryMode mode,
                            const std::filesystem::path& report_path);
  static BugRegistry CreateInMemory(uint32_t bug_count, CanaryMode mode);
  // Honors BENCH_REPORT_PATH (in-memory when unset or empty) and
  // BENCH_FATAL=1.
  static BugRegistry FromEnvironment(uint32_t bug_count);

  BugRegistry(BugRegistry&& other) noexcept;
  BugRegistry& operator=(BugRegistry&& other) noexcept;
  BugRegistry(const BugRegistry&) = delete;
  BugRegistry& operator=(const BugRegistry&) = delete;
  ~BugRegistry();

  // Out-of-range ids are a no-op plus a diagnostic on stderr.
  void Log(uint32_t bug_id, bool condition);

  // Zeroes all counters and clears `faulty`. Called between executions.
  void Reset();

  uint32_t bug_count() const { return bug_count_; }
  CanaryMode mode() const { return mode_; }
  void set_mode(CanaryMode mode) { mode_ = mode; }
  void set_fatal_handler(FatalHandler handler) {
    fatal_handler_ = std::move(handler);
  }
  bool file_backed() const { return fd_ >= 0; }

  uint64_t reached(uint32_t bug_id) const;
  uint64_t triggered(uint32_t bug_id) const;
  bool faulty() const { return base_[kReportFaultyOffset] != 0; }

  RegistrySnapshot Snapshot() const;
  std::span<const uint8_t> bytes() const { return {base_, size_}; }

  // Pushes the mapping to the backing file (no-op when in memory).
  void Flush();

 private:
  BugRegistry(uint32_t bug_count, CanaryMode mode, uint8_t* base, size_t size,
              int fd);
  void WriteHeader();
  void Release();
  [[noreturn]] void Terminate();
  void FireFatal(uint32_t bug_id);

  uint32_t bug_count_ = 0;
  CanaryMode mode_ = CanaryMode::kNormal;
  uint8_t* base_ = nullptr;
  size_t size_ = 0;
  int fd_ = -1;
  std::unique_ptr<uint8_t[]> heap_;
  FatalHandler fatal_handler_;
};

}  // namespace gtbench

#endif  // GTBENCH_CANARY_REGISTRY_H_
