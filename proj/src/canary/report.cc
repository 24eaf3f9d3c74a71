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

#include "gtbench/canary/report.h"

#include <algorithm>
#include <string>

#include "gtbench/common/errors.h"

namespace gtbench {

Bytes EncodeReport(const RegistrySnapshot& snapshot) {
  Bytes out(ReportSize(snapshot.bug_count()), 0);
  std::copy(std::begin(kReportMagic), std::end(kReportMagic), out.begin());
  StoreLe16(&out[kReportVersionOffset], kReportVersion);
  StoreLe32(&out[kReportBugCountOffset], snapshot.bug_count());
  out[kReportFaultyOffset] = snapshot.faulty ? 1 : 0;
  uint8_t* rec = out.data() + kReportHeaderSize;
  for (const BugCounters& c : snapshot.bugs) {
    StoreLe64(rec, c.reached);
    StoreLe64(rec + 8, c.triggered);
    rec += kReportRecordSize;
  }
  return out;
}

RegistrySnapshot DecodeReport(ByteSpan bytes) {
  if (bytes.size() < kReportHeaderSize) {
    throw FormatError("report truncated: " + std::to_string(bytes.size()) +
                      " bytes, header needs " +
                      std::to_string(kReportHeaderSize));
  }
  if (!std::equal(std::begin(kReportMagic), std::end(kReportMagic),
                  bytes.begin())) {
    throw FormatError("report magic mismatch");
  }
  const uint16_t version = LoadLe16(&bytes[kReportVersionOffset]);
  if (version != kReportVersion) {
    throw FormatError("unsupported report version " + std::to_string(version));
  }
  if (LoadLe16(&bytes[kReportReservedOffset]) != 0) {
    throw FormatError("report reserved field is nonzero");
  }
  for (size_t i = kReportPadOffset; i < kReportHeaderSize; ++i) {
    if (bytes[i] != 0) throw FormatError("report padding is nonzero");
  }
  const uint8_t faulty = bytes[kReportFaultyOffset];
  if (faulty > 1) throw FormatError("report faulty flag is not boolean");
  const uint32_t bug_count = LoadLe32(&bytes[kReportBugCountOffset]);
  if (bytes.size() != ReportSize(bug_count)) {
    throw FormatError("report size " + std::to_string(bytes.size()) +
                      " does not match bug_count " +
                      std::to_string(bug_count));
  }
  RegistrySnapshot snapshot;
  snapshot.faulty = faulty == 1;
  snapshot.bugs.resize(bug_count);
  const uint8_t* rec = bytes.data() + kReportHeaderSize;
  for (BugCounters& c : snapshot.bugs) {
    c.reached = LoadLe64(rec);
    c.triggered = LoadLe64(rec + 8);
    rec += kReportRecordSize;
  }
  return snapshot;
}

RegistrySnapshot ReadReportFile(const std::filesystem::path& path) {
  return DecodeReport(ReadFileBytes(path));
}

}  // namespace gtbench
