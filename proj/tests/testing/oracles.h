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
//
// Brute-force reference implementations the tests check the library
// against. Everything here favors obviousness over speed and stays
// independent of the code paths under test.

#ifndef CCTG_TESTS_TESTING_ORACLES_H_
#define CCTG_TESTS_TESTING_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cctg/constraints.h"
#include "cctg/coverage.h"
#include "cctg/model.h"
#include "cctg/splitmix.h"

namespace cctg::testing {

// Independent recursive evaluator over the public constraint AST.
inline bool OracleEval(const ConstraintFormula::Node* node,
                       const std::vector<std::uint32_t>& assignment) {
  using Op = ConstraintFormula::Op;
  switch (node->op) {
    case Op::kEq:
      return assignment.at(node->param_index) == node->value;
    case Op::kNe:
      return assignment.at(node->param_index) != node->value;
    case Op::kExcluded:
      return assignment.at(node->param_index) == 0;
    case Op::kNot:
      return !OracleEval(node->children[0].get(), assignment);
    case Op::kAnd:
      return OracleEval(node->children[0].get(), assignment) &&
             OracleEval(node->children[1].get(), assignment);
    case Op::kOr:
      return OracleEval(node->children[0].get(), assignment) ||
             OracleEval(node->children[1].get(), assignment);
    case Op::kImplies:
      return !OracleEval(node->children[0].get(), assignment) ||
             OracleEval(node->children[1].get(), assignment);
  }
  return false;
}

inline bool OracleEvalAll(const std::vector<ConstraintFormula>& formulas,
                          const std::vector<std::uint32_t>& assignment) {
  for (const ConstraintFormula& f : formulas) {
    if (!f.empty() && !OracleEval(f.root().get(), assignment)) return false;
  }
  return true;
}

// Odometer enumeration of every complete assignment.
inline void EnumerateAssignments(
    const std::vector<std::uint32_t>& sizes,
    const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  std::vector<std::uint32_t> assignment(sizes.size(), 0);
  for (;;) {
    visit(assignment);
    std::size_t i = 0;
    while (i < sizes.size() && ++assignment[i] == sizes[i]) {
      assignment[i] = 0;
      ++i;
    }
    if (i == sizes.size()) return;
  }
}

inline std::vector<std::uint32_t> EffectiveSizes(const TestModel& model) {
  std::vector<std::uint32_t> sizes;
  for (const Parameter& p : model.parameters) {
    sizes.push_back(p.EffectiveSize());
  }
  return sizes;
}

// Full truth-table valid set of a model, via the oracle evaluator.
inline std::set<std::vector<std::uint32_t>> OracleValidSet(
    const TestModel& model) {
  std::set<std::vector<std::uint32_t>> valid;
  EnumerateAssignments(EffectiveSizes(model),
                       [&](const std::vector<std::uint32_t>& assignment) {
                         if (OracleEvalAll(model.constraints, assignment)) {
                           valid.insert(assignment);
                         }
                       });
  return valid;
}

// Quadratic grouping of cases that agree everywhere except `parameter`.
inline std::vector<std::vector<std::size_t>> OracleGroups(
    const std::vector<TestCase>& cases, int parameter) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> placed(cases.size(), false);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (placed[i]) continue;
    std::vector<std::size_t> group{i};
    placed[i] = true;
    for (std::size_t j = i + 1; j < cases.size(); ++j) {
      if (placed[j]) continue;
      bool agrees = true;
      for (std::size_t p = 0; p < cases[i].assignment.size(); ++p) {
        if (static_cast<int>(p) == parameter) continue;
        if (cases[i].assignment[p] != cases[j].assignment[p]) {
          agrees = false;
          break;
        }
      }
      if (agrees) {
        group.push_back(j);
        placed[j] = true;
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

// Reference for ParameterWeight under the scalar metric: mean of
// (max - min) scalar over groups with at least two members.
inline double OracleParameterWeight(const std::vector<TestCase>& cases,
                                    const std::vector<std::uint64_t>& scalars,
                                    int parameter) {
  double sum = 0.0;
  int spreads = 0;
  for (const auto& group : OracleGroups(cases, parameter)) {
    if (group.size() < 2) continue;
    std::uint64_t lo = scalars[group[0]], hi = scalars[group[0]];
    for (std::size_t index : group) {
      lo = std::min(lo, scalars[index]);
      hi = std::max(hi, scalars[index]);
    }
    sum += static_cast<double>(hi - lo);
    ++spreads;
  }
  return spreads == 0 ? 0.0 : sum / spreads;
}

// Reference for ProbePairs: all-pairs scan with the agree-except-p filter.
inline std::vector<std::pair<std::size_t, std::size_t>> OracleProbePairs(
    const std::vector<TestCase>& cases, int parameter) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (std::size_t j = i + 1; j < cases.size(); ++j) {
      bool agree_elsewhere = true;
      for (std::size_t p = 0; p < cases[i].assignment.size(); ++p) {
        if (static_cast<int>(p) == parameter) continue;
        if (cases[i].assignment[p] != cases[j].assignment[p]) {
          agree_elsewhere = false;
          break;
        }
      }
      if (agree_elsewhere &&
          cases[i].assignment[parameter] != cases[j].assignment[parameter]) {
        pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

// --------------------------------------------------------------------------
// Random inputs for property tests.

struct RandomModelOptions {
  int max_parameters = 6;
  int max_values = 4;        // concrete values for binary parameters
  int max_constraints = 0;
  bool distinct_flags = true;
};

inline ConstraintFormula RandomFormula(SplitMix64& rng,
                                       const std::vector<Parameter>& params,
                                       int depth) {
  if (depth <= 0 || rng.Below(3) == 0) {
    std::size_t p = rng.Below(params.size());
    std::uint32_t size = params[p].EffectiveSize();
    switch (rng.Below(3)) {
      case 0:
        return ConstraintFormula::Eq(params[p].name,
                                     static_cast<std::uint32_t>(
                                         rng.Below(size)));
      case 1:
        return ConstraintFormula::Ne(params[p].name,
                                     static_cast<std::uint32_t>(
                                         rng.Below(size)));
      default:
        return ConstraintFormula::Excluded(params[p].name);
    }
  }
  switch (rng.Below(4)) {
    case 0:
      return ConstraintFormula::Not(RandomFormula(rng, params, depth - 1));
    case 1:
      return ConstraintFormula::And(RandomFormula(rng, params, depth - 1),
                                    RandomFormula(rng, params, depth - 1));
    case 2:
      return ConstraintFormula::Or(RandomFormula(rng, params, depth - 1),
                                   RandomFormula(rng, params, depth - 1));
    default:
      return ConstraintFormula::Implies(RandomFormula(rng, params, depth - 1),
                                        RandomFormula(rng, params, depth - 1));
  }
}

inline TestModel RandomModel(SplitMix64& rng,
                             const RandomModelOptions& options = {}) {
  TestModel model;
  int n = 1 + static_cast<int>(rng.Below(options.max_parameters));
  for (int i = 0; i < n; ++i) {
    Parameter p;
    p.name = "p" + std::to_string(i);
    if (options.distinct_flags) p.flag = "--p" + std::to_string(i);
    if (rng.Below(3) == 0) {
      p.kind = ParameterKind::kUnary;
    } else {
      p.kind = ParameterKind::kBinary;
      int count = 1 + static_cast<int>(rng.Below(options.max_values));
      for (int v = 0; v < count; ++v) {
        p.values.push_back("v" + std::to_string(v));
      }
    }
    p.default_index =
        static_cast<std::uint32_t>(rng.Below(p.EffectiveSize()));
    model.parameters.push_back(std::move(p));
  }
  for (int c = 0; c < options.max_constraints; ++c) {
    if (rng.Below(2) == 0) continue;
    ConstraintFormula f = RandomFormula(rng, model.parameters, 2);
    model.constraint_sources.push_back(FormatConstraint(f));
    model.constraints.push_back(BindConstraint(f, model.parameters));
  }
  return model;
}

// --------------------------------------------------------------------------
// Statistics helpers.

inline double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2]
                    : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// Pearson chi-square statistic for observed counts against expected
// probabilities.
inline double ChiSquare(const std::vector<std::uint64_t>& observed,
                        const std::vector<double>& probabilities) {
  std::uint64_t total = 0;
  for (std::uint64_t o : observed) total += o;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double expected = probabilities[i] * static_cast<double>(total);
    if (expected <= 0.0) continue;
    double d = static_cast<double>(observed[i]) - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

// Upper critical value of the chi-square distribution at p = 0.001.
inline double ChiSquareCritical001(int dof) {
  // Values straight from standard tables (two params -> dof 2, etc).
  static const double kTable[] = {0.0,    10.828, 13.816, 16.266, 18.467,
                                  20.515, 22.458, 24.322, 26.124, 27.877};
  return kTable[dof];
}

}  // namespace cctg::testing

#endif  // CCTG_TESTS_TESTING_ORACLES_H_
