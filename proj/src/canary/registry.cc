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

#include "gtbench/canary/registry.h"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

std::string ErrnoText(const std::string& what,
                      const std::filesystem::path& path) {
  return what + " " + path.string() + ": " + std::strerror(errno);
}

}  // namespace

BugRegistry::BugRegistry(uint32_t bug_count, CanaryMode mode, uint8_t* base,
                         size_t size, int fd)
    : bug_count_(bug_count), mode_(mode), base_(base), size_(size), fd_(fd) {}

BugRegistry BugRegistry::Create(uint32_t bug_count, CanaryMode mode,
                                const std::filesystem::path& report_path) {
  if (bug_count == 0) throw InvalidArgument("bug_count must be at least 1");
  const size_t size = ReportSize(bug_count);
  const int fd = ::open(report_path.c_str(), O_RDWR | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw InitError(ErrnoText("cannot create report", report_path));
  if (::ftruncate(fd, static_cast<off_t>(size)) != 0) {
    const std::string msg = ErrnoText("cannot size report", report_path);
    ::close(fd);
    throw InitError(msg);
  }
  void* map = ::mmap(nullptr, size, PROT_READ | PROT_WRITE, MAP_SHARED, fd, 0);
  if (map == MAP_FAILED) {
    const std::string msg = ErrnoText("cannot map report", report_path);
    ::close(fd);
    throw InitError(msg);
  }
  BugRegistry registry(bug_count, mode, static_cast<uint8_t*>(map), size, fd);
  registry.WriteHeader();
  return registry;
}

BugRegistry BugRegistry::CreateInMemory(uint32_t bug_count, CanaryMode mode) {
  if (bug_count == 0) throw InvalidArgument("bug_count must be at least 1");
  const size_t size = ReportSize(bug_count);
  auto heap = std::make_unique<uint8_t[]>(size);
  BugRegistry registry(bug_count, mode, heap.get(), size, -1);
  registry.heap_ = std::move(heap);
  registry.WriteHeader();
  return registry;
}

BugRegistry BugRegistry::FromEnvironment(uint32_t bug_count) {
  const char* fatal = std::getenv(kFatalEnv);
  const CanaryMode mode = (fatal != nullptr && std::string(fatal) == "1")
                              ? CanaryMode::kFatal
                              : CanaryMode::kNormal;
  const char* path = std::getenv(kReportPathEnv);
  if (path == nullptr || *path == '\0') return CreateInMemory(bug_count, mode);
  return Create(bug_count, mode, path);
}

BugRegistry::BugRegistry(BugRegistry&& other) noexcept
    : bug_count_(other.bug_count_),
      mode_(other.mode_),
      base_(std::exchange(other.base_, nullptr)),
      size_(std::exchange(other.size_, 0)),
      fd_(std::exchange(other.fd_, -1)),
      heap_(std::move(other.heap_)),
      fatal_handler_(std::move(other.fatal_handler_)) {}

BugRegistry& BugRegistry::operator=(BugRegistry&& other) noexcept {
  if (this != &other) {
    Release();
    bug_count_ = other.bug_count_;
    mode_ = other.mode_;
    base_ = std::exchange(other.base_, nullptr);
    size_ = std::exchange(other.size_, 0);
    fd_ = std::exchange(other.fd_, -1);
    heap_ = std::move(other.heap_);
    fatal_handler_ = std::move(other.fatal_handler_);
  }
  return *this;
}

BugRegistry::~BugRegistry() { Release(); }

void BugRegistry::Release() {
  if (fd_ >= 0) {
    ::msync(base_, size_, MS_SYNC);
    ::munmap(base_, size_);
    ::close(fd_);
    fd_ = -1;
  }
  heap_.reset();
  base_ = nullptr;
  size_ = 0;
}

void BugRegistry::WriteHeader() {
  std::memset(base_, 0, size_);
  std::copy(std::begin(kReportMagic), std::end(kReportMagic), base_);
  StoreLe16(base_ + kReportVersionOffset, kReportVersion);
  StoreLe32(base_ + kReportBugCountOffset, bug_count_);
}

void BugRegistry::Log(uint32_t bug_id, bool condition) {
  if (bug_id >= bug_count_) {
    std::fprintf(stderr, "canary: bug id %u out of range (bug_count=%u)\n",
                 bug_id, bug_count_);
    return;
  }
  uint8_t* rec = base_ + kReportHeaderSize + kReportRecordSize * bug_id;
  const uint64_t live = static_cast<uint64_t>(base_[kReportFaultyOffset] ^ 1u);
  const uint64_t cond = static_cast<uint64_t>(condition);
  StoreLe64(rec, LoadLe64(rec) + (1 & live));
  StoreLe64(rec + 8, LoadLe64(rec + 8) + (cond & live));
  base_[kReportFaultyOffset] |= static_cast<uint8_t>(cond);
  if (mode_ == CanaryMode::kFatal && (cond & live) != 0) FireFatal(bug_id);
}

void BugRegistry::FireFatal(uint32_t bug_id) {
  Flush();
  if (fatal_handler_) fatal_handler_(bug_id);
  Terminate();
}

void BugRegistry::Terminate() {
  std::fflush(stderr);
  ::_exit(kFatalCanaryExitCode);
}

void BugRegistry::Reset() {
  std::memset(base_ + kReportHeaderSize, 0, size_ - kReportHeaderSize);
  base_[kReportFaultyOffset] = 0;
}

uint64_t BugRegistry::reached(uint32_t bug_id) const {
  if (bug_id >= bug_count_) throw InvalidArgument("bug id out of range");
  return LoadLe64(base_ + kReportHeaderSize + kReportRecordSize * bug_id);
}

uint64_t BugRegistry::triggered(uint32_t bug_id) const {
  if (bug_id >= bug_count_) throw InvalidArgument("bug id out of range");
  return LoadLe64(base_ + kReportHeaderSize + kReportRecordSize * bug_id + 8);
}

RegistrySnapshot BugRegistry::Snapshot() const {
  return DecodeReport(bytes());
}

void BugRegistry::Flush() {
  if (fd_ >= 0) ::msync(base_, size_, MS_SYNC);
}

}  // namespace gtbench
