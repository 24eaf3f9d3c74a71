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

#include "gtbench/orchestrator/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gtbench/common/errors.h"

namespace gtbench {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseUnsigned(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidArgument("config: " + std::string(key) +
                          " expects a non-negative integer, got '" +
                          std::string(value) + "'");
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  const std::string s(value);
  size_t used = 0;
  double out = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(out)) {
    throw InvalidArgument("config: " + std::string(key) +
                          " expects a number, got '" + s + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw InvalidArgument("config: " + std::string(key) +
                        " expects true/false, got '" + std::string(value) +
                        "'");
}

}  // namespace

CampaignConfig ParseConfig(std::string_view text) {
  CampaignConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) +
                            ": expected key = value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key == "target") {
      config.target = value;
    } else if (key == "fuzzer") {
      config.fuzzer = value;
    } else if (key == "trials") {
      config.trials = ParseUnsigned<uint32_t>(key, value);
    } else if (key == "duration_s") {
      config.duration_s = ParseDouble(key, value);
    } else if (key == "poll_interval_s") {
      config.poll_interval_s = ParseDouble(key, value);
    } else if (key == "seeds_dir") {
      config.seeds_dir = value;
    } else if (key == "rng_seed") {
      config.rng_seed = ParseUnsigned<uint64_t>(key, value);
    } else if (key == "workers") {
      config.workers = ParseUnsigned<uint32_t>(key, value);
    } else if (key == "execs") {
      config.execs = ParseUnsigned<uint64_t>(key, value);
    } else if (key == "cmplog") {
      config.cmplog = ParseBool(key, value);
    } else if (key == "deterministic") {
      config.deterministic = ParseBool(key, value);
    } else if (key == "memory_limit_mb") {
      config.memory_limit_mb = ParseUnsigned<uint64_t>(key, value);
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else {
      throw InvalidArgument("config line " + std::to_string(line_no) +
                            ": unknown key '" + std::string(key) + "'");
    }
  }
  Validate(config);
  return config;
}

CampaignConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  CampaignConfig config = ParseConfig(buf.str());
  const std::filesystem::path base = path.parent_path();
  if (!config.seeds_dir.empty() && config.seeds_dir.is_relative()) {
    config.seeds_dir = base / config.seeds_dir;
  }
  if (!config.out_dir.empty() && config.out_dir.is_relative()) {
    config.out_dir = base / config.out_dir;
  }
  return config;
}

void Validate(const CampaignConfig& config) {
  if (config.target.empty()) throw InvalidArgument("config: target missing");
  if (config.trials < 1) throw InvalidArgument("config: trials must be >= 1");
  if (config.workers < 1) {
    throw InvalidArgument("config: workers must be >= 1");
  }
  if (!(config.duration_s > 0)) {
    throw InvalidArgument("config: duration_s must be > 0");
  }
  if (!(config.poll_interval_s > 0) ||
      config.poll_interval_s > config.duration_s) {
    throw InvalidArgument(
        "config: poll_interval_s must be in (0, duration_s]");
  }
}

std::string ConfigToString(const CampaignConfig& c) {
  std::ostringstream out;
  out << "target = " << c.target << "\n"
      << "fuzzer = " << c.fuzzer << "\n"
      << "trials = " << c.trials << "\n"
      << "duration_s = " << c.duration_s << "\n"
      << "poll_interval_s = " << c.poll_interval_s << "\n";
  if (!c.seeds_dir.empty()) out << "seeds_dir = " << c.seeds_dir.string() << "\n";
  out << "rng_seed = " << c.rng_seed << "\n"
      << "workers = " << c.workers << "\n"
      << "execs = " << c.execs << "\n"
      << "cmplog = " << (c.cmplog ? "true" : "false") << "\n"
      << "deterministic = " << (c.deterministic ? "true" : "false") << "\n"
      << "memory_limit_mb = " << c.memory_limit_mb << "\n";
  if (!c.out_dir.empty()) out << "out_dir = " << c.out_dir.string() << "\n";
  return out.str();
}

}  // namespace gtbench
