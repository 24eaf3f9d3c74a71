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

#ifndef GTBENCH_CANARY_COMBINATORS_H_
#define GTBENCH_CANARY_COMBINATORS_H_

// Non-short-circuit boolean composition for canary trigger conditions.
//
// `a && b` and `a || b` compile to conditional jumps, which a coverage-guided
// fuzzer observes as extra edges around the oracle. These evaluate both
// (already computed) operands and combine them with bitwise operators so the
// condition stays inside one basic block. Compilers are free to undo this for
// bool operands in principle; the unit tests inspect the generated code of
// the out-of-line versions where the toolchain allows it.

namespace gtbench {

constexpr bool AndNb(bool a, bool b) noexcept {
  return static_cast<bool>(static_cast<unsigned>(a) & static_cast<unsigned>(b));
}

constexpr bool OrNb(bool a, bool b) noexcept {
  return static_cast<bool>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}

// Out-of-line copies, so the composition can be checked in object code.
bool AndNbOutline(bool a, bool b) noexcept;
bool OrNbOutline(bool a, bool b) noexcept;

}  // namespace gtbench

#endif  // GTBENCH_CANARY_COMBINATORS_H_
