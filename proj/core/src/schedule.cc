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

#include "cctg/schedule.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include "cctg/error.h"
#include "cctg/splitmix.h"

namespace cctg {

namespace {

// Which parameters appear in formulas the assignment currently violates.
std::vector<int> ViolatedParameters(const TestModel& model,
                                    const TestCase& tc) {
  std::vector<bool> flagged(model.parameters.size(), false);
  for (const ConstraintFormula& f : model.constraints) {
    if (Evaluate(f, tc)) continue;
    // Collect every bound parameter in the violated formula.
    std::vector<const ConstraintFormula::Node*> stack{f.root().get()};
    while (!stack.empty()) {
      const auto* node = stack.back();
      stack.pop_back();
      if (node->param_index >= 0) flagged[node->param_index] = true;
      for (const auto& child : node->children) stack.push_back(child.get());
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < flagged.size(); ++i) {
    if (flagged[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

ProbeSuite BuildProbeSuite(const TestModel& model, int test_depth,
                           std::uint64_t seed, AdvanceOrder order) {
  if (test_depth < 1) {
    throw ValidationError("test depth must be >= 1");
  }
  const std::size_t n = model.parameters.size();

  ProbeSuite suite;
  suite.seed = seed;
  suite.test_depth = test_depth;
  suite.order = order;
  suite.rv_tables.resize(n);

  // Randomized value order per parameter: a shuffled prefix of its
  // effective value list, at most test_depth entries. Parameters with
  // fewer values keep their whole list and exhaust earlier.
  for (std::size_t p = 0; p < n; ++p) {
    std::uint32_t effective = model.parameters[p].EffectiveSize();
    std::vector<std::uint32_t> indices(effective);
    std::iota(indices.begin(), indices.end(), 0u);
    SplitMix64 rng(SplitMix64::Mix(seed, p));
    rng.Shuffle(indices);
    std::size_t take = std::min<std::size_t>(test_depth, effective);
    indices.resize(take);
    suite.rv_tables[p] = std::move(indices);
  }

  // pos[p]: last consumed position in rv_tables[p].
  std::vector<std::size_t> pos(n, 0);
  TestCase current;
  current.assignment.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    current.assignment.push_back(suite.rv_tables[p][0]);
  }

  // Bounded repair when the starting case violates constraints: advance
  // parameters that appear in violated formulas through their randomized
  // lists. These pre-suite advances are not logged.
  if (!EvaluateAll(model.constraints, current)) {
    std::size_t budget = 0;
    for (const auto& rv : suite.rv_tables) budget += rv.size();
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
      if (EvaluateAll(model.constraints, current)) break;
      std::vector<int> involved = ViolatedParameters(model, current);
      bool advanced = false;
      for (int p : involved) {
        if (pos[p] + 1 < suite.rv_tables[p].size()) {
          ++pos[p];
          current.assignment[p] = suite.rv_tables[p][pos[p]];
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    if (!EvaluateAll(model.constraints, current)) {
      throw UnsatisfiableError(
          "initial probe case violates the model constraints and repair "
          "failed; adjust the constraints or try another seed");
    }
  }
  suite.cases.push_back(current);

  auto exhausted = [&](std::size_t p) {
    return pos[p] + 1 >= suite.rv_tables[p].size();
  };
  auto all_exhausted = [&]() {
    for (std::size_t p = 0; p < n; ++p) {
      if (!exhausted(p)) return false;
    }
    return true;
  };

  // Advance one parameter per step until every randomized list is drained.
  std::size_t cursor = 0;
  while (!all_exhausted()) {
    std::size_t p = cursor % n;
    if (order == AdvanceOrder::kExhaustFirst) {
      p = 0;
      while (exhausted(p)) ++p;
    } else {
      while (exhausted(p)) {
        ++cursor;
        p = cursor % n;
      }
    }

    ++pos[p];
    std::uint32_t from = current.assignment[p];
    std::uint32_t to = suite.rv_tables[p][pos[p]];
    TestCase candidate = current;
    candidate.assignment[p] = to;

    if (EvaluateAll(model.constraints, candidate)) {
      suite.cases.push_back(candidate);
      suite.change_log.push_back(
          {suite.cases.size() - 1, static_cast<int>(p), from, to, false});
      current = std::move(candidate);
    } else {
      suite.change_log.push_back(
          {suite.cases.size(), static_cast<int>(p), from, to, true});
    }
    if (order == AdvanceOrder::kRoundRobin) ++cursor;
  }
  return suite;
}

std::vector<std::pair<std::size_t, std::size_t>> ProbePairs(
    const std::vector<TestCase>& cases, int parameter) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (cases.empty()) return pairs;

  // Bucket cases by their assignment with `parameter` masked out, then
  // pair up bucket members that differ on it.
  std::unordered_map<TestCase, std::vector<std::size_t>, TestCaseHash> buckets;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    TestCase key = cases[i];
    key.assignment[parameter] = 0;
    buckets[std::move(key)].push_back(i);
  }
  for (const auto& [key, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        std::size_t i = members[a], j = members[b];
        if (cases[i].assignment[parameter] != cases[j].assignment[parameter]) {
          pairs.emplace_back(std::min(i, j), std::max(i, j));
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace cctg
