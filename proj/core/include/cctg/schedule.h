// Copyright 2026 The CCTG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCTG_SCHEDULE_H_
#define CCTG_SCHEDULE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "cctg/model.h"

namespace cctg {

// Which parameter to advance next while walking the probing suite.
enum class AdvanceOrder {
  kRoundRobin,     // P1, P2, ..., Pn, P1, ... (default)
  kExhaustFirst,   // drain P1's list, then P2's, ...
};

// One attempted advance. `from_index` is the assignment value before the
// step, so replaying the non-skipped entries on cases[0] reproduces the
// whole sequence. Skipped entries record constraint-violating steps that
// consumed a randomized-list position without emitting a case.
struct ChangeEntry {
  std::size_t case_index = 0;    // index of the produced (or would-be) case
  int parameter = -1;
  std::uint32_t from_index = 0;
  std::uint32_t to_index = 0;
  bool skipped = false;
};

// The one-factor-change probing suite: consecutive cases differ in exactly
// one parameter's value. Used solely to measure per-parameter coverage
// deltas; `rv_tables[p]` is parameter p's randomized value order.
struct ProbeSuite {
  std::vector<TestCase> cases;
  std::vector<ChangeEntry> change_log;
  std::vector<std::vector<std::uint32_t>> rv_tables;
  std::uint64_t seed = 0;
  int test_depth = 0;
  AdvanceOrder order = AdvanceOrder::kRoundRobin;
};

// Builds the probing suite. Each parameter gets a randomized order of
// min(test_depth, effective size) distinct value indices; the first case
// assigns every parameter its first randomized value, and each later case
// advances a single parameter one position. Steps that would violate the
// model constraints are skipped and logged. Throws UnsatisfiableError when
// the initial case violates constraints and bounded repair fails.
ProbeSuite BuildProbeSuite(const TestModel& model, int test_depth,
                           std::uint64_t seed,
                           AdvanceOrder order = AdvanceOrder::kRoundRobin);

// All unordered case-index pairs (i < j) that agree on every parameter
// except `parameter` and differ on it.
std::vector<std::pair<std::size_t, std::size_t>> ProbePairs(
    const std::vector<TestCase>& cases, int parameter);

}  // namespace cctg

#endif  // CCTG_SCHEDULE_H_
