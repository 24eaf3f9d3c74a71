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

#ifndef GTBENCH_COMMON_ERRORS_H_
#define GTBENCH_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gtbench {

// Base class for every error raised by the benchmark. Bug outcomes (canary
// triggers, modeled faults) are never reported through exceptions that leave
// the library; these types are reserved for misuse and infrastructure
// failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The report region could not be created or mapped.
class InitError : public Error {
 public:
  using Error::Error;
};

// Malformed report bytes, config files, CSV or JSON documents.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A requested artifact (e.g. a PoV) is not shipped.
class NotAvailable : public Error {
 public:
  using Error::Error;
};

// The fuzzing loop could not execute the target. Distinct from crashes.
class CampaignError : public Error {
 public:
  using Error::Error;
};

// Input data admits no meaningful result (e.g. PCA over constant data).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace gtbench

#endif  // GTBENCH_COMMON_ERRORS_H_
