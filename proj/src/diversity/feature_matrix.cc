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

#include "gtbench/diversity/feature_matrix.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gtbench/common/errors.h"
#include "json.hpp"

namespace gtbench {

namespace {

using nlohmann::json;

}  // namespace

FeatureProfile ParseProfile(std::string_view json_text) {
  FeatureProfile p;
  try {
    const json doc = json::parse(json_text);
    p.subject = doc.at("subject").get<std::string>();
    if (doc.contains("family")) p.family = doc.at("family").get<std::string>();
    const json& seed = doc.at("seed");
    p.seed = seed.is_string() ? seed.get<std::string>() : seed.dump();
    for (const auto& [category, value] : doc.at("counts").items()) {
      const double v = value.get<double>();
      if (!std::isfinite(v) || v < 0) {
        throw FormatError("profile count for '" + category +
                          "' must be a non-negative number");
      }
      p.counts[category] = v;
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed profile: ") + e.what());
  }
  if (p.subject.empty()) throw FormatError("profile without subject");
  return p;
}

std::string ProfileToJson(const FeatureProfile& profile) {
  json doc = {{"subject", profile.subject},
              {"seed", profile.seed},
              {"counts", profile.counts}};
  if (!profile.family.empty()) doc["family"] = profile.family;
  return doc.dump(2);
}

std::vector<FeatureProfile> ReadProfiles(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw InvalidArgument(dir.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<FeatureProfile> out;
  for (const fs::path& f : files) {
    std::ifstream in(f);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      out.push_back(ParseProfile(buf.str()));
    } catch (const FormatError& e) {
      throw FormatError(f.string() + ": " + e.what());
    }
  }
  return out;
}

FeatureProfile TargetProfile(const Target& target, ByteSpan input,
                             std::string seed_name) {
  OpProfile ops{};
  ExecOptions options;
  options.profile = &ops;
  RunDriver(target, input, ExecMode::kNormal, options);
  FeatureProfile p;
  p.subject = std::string(target.name());
  p.family = "gtbench";
  p.seed = std::move(seed_name);
  for (size_t i = 0; i < kOpCategoryCount; ++i) {
    p.counts[std::string(OpCategoryName(static_cast<OpCategory>(i)))] =
        static_cast<double>(ops[i]);
  }
  return p;
}

FeatureMatrix BuildMatrix(std::span<const FeatureProfile> profiles,
                          std::span<const std::string> categories,
                          std::span<const std::string> subjects) {
  FeatureMatrix m;
  if (categories.empty()) {
    std::set<std::string> seen;
    for (const FeatureProfile& p : profiles) {
      for (const auto& [c, v] : p.counts) seen.insert(c);
    }
    m.categories.assign(seen.begin(), seen.end());
  } else {
    m.categories.assign(categories.begin(), categories.end());
    if (std::set<std::string>(categories.begin(), categories.end()).size() !=
        categories.size()) {
      throw InvalidArgument("duplicate category label");
    }
  }
  if (subjects.empty()) {
    for (const FeatureProfile& p : profiles) {
      if (std::find(m.subjects.begin(), m.subjects.end(), p.subject) ==
          m.subjects.end()) {
        m.subjects.push_back(p.subject);
      }
    }
  } else {
    m.subjects.assign(subjects.begin(), subjects.end());
    if (std::set<std::string>(subjects.begin(), subjects.end()).size() !=
        subjects.size()) {
      throw InvalidArgument("duplicate subject label");
    }
  }
  if (m.subjects.empty()) throw InvalidArgument("no profiles");

  const size_t n = m.categories.size();
  const size_t k = m.subjects.size();
  m.values = DenseMatrix(n, k);
  m.families.assign(k, "");
  std::vector<size_t> seeds(k, 0);
  for (const FeatureProfile& p : profiles) {
    const auto sj = std::find(m.subjects.begin(), m.subjects.end(), p.subject);
    if (sj == m.subjects.end()) continue;
    const auto j = static_cast<size_t>(sj - m.subjects.begin());
    ++seeds[j];
    if (m.families[j].empty()) m.families[j] = p.family;
    for (const auto& [c, v] : p.counts) {
      const auto ci = std::find(m.categories.begin(), m.categories.end(), c);
      if (ci == m.categories.end()) {
        throw InvalidArgument("unknown category '" + c + "' in profile of " +
                              p.subject);
      }
      if (!std::isfinite(v) || v < 0) {
        throw InvalidArgument("negative or non-finite count in profile of " +
                              p.subject);
      }
      m.values(static_cast<size_t>(ci - m.categories.begin()), j) += v;
    }
  }
  for (size_t j = 0; j < k; ++j) {
    if (seeds[j] == 0) {
      throw InvalidArgument("subject '" + m.subjects[j] + "' has no seeds");
    }
    for (size_t i = 0; i < n; ++i) {
      m.values(i, j) /= static_cast<double>(seeds[j]);
    }
  }
  return m;
}

}  // namespace gtbench
