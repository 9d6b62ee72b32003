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

#include "cctg/generator.h"

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <utility>

#include "cctg/error.h"
#include "cctg/splitmix.h"

namespace cctg {

std::string MethodName(GenerationMethod method) {
  switch (method) {
    case GenerationMethod::kCctg: return "cctg";
    case GenerationMethod::kRandom: return "random";
    case GenerationMethod::kUnweighted: return "unweighted";
  }
  return "?";
}

GenerationMethod MethodFromName(std::string_view name) {
  if (name == "cctg") return GenerationMethod::kCctg;
  if (name == "random") return GenerationMethod::kRandom;
  if (name == "unweighted") return GenerationMethod::kUnweighted;
  throw ValidationError("unknown generation method '" + std::string(name) +
                        "' (expected cctg|random|unweighted)");
}

int WeightAxis::SelectParameter(double r) const {
  for (const Segment& segment : segments) {
    if (r <= segment.upper) return segment.parameter;
  }
  // r == 100 can land here only through rounding; the last segment owns it.
  return segments.back().parameter;
}

WeightAxis BuildAxis(const WeightVector& weights) {
  WeightAxis axis;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.normalized.size(); ++i) {
    double length = weights.normalized[i] * 100.0;
    if (length <= 0.0) continue;   // zero-weight: never selectable
    cumulative += weights.normalized[i];
    axis.segments.push_back({static_cast<int>(i), cumulative * 100.0});
  }
  if (axis.segments.empty()) {
    throw ValidationError("weight axis is empty: all weights are zero");
  }
  if (std::abs(axis.segments.back().upper - 100.0) > 1e-9) {
    throw ValidationError("normalized weights do not cover the axis");
  }
  axis.segments.back().upper = 100.0;
  return axis;
}

namespace {

// Shared mutation-walk skeleton. `propose` picks the parameter to permute
// and the first candidate value for this attempt; the walk then looks for
// a constraint-satisfying value by advancing cyclically through the
// parameter's remaining values, abandons the attempt when the candidate
// duplicates an earlier case, and stops after max_retries consecutive
// failed attempts. `deterministic` enables the provably-stuck early exit
// for seedless proposers (a full failed parameter cycle cannot unstick).
struct Proposal {
  int parameter;
  std::uint32_t first_value;
};

GenerationResult MutationWalk(const TestModel& model,
                              const GenerationConfig& config,
                              const std::function<Proposal(const TestCase&)>&
                                  propose,
                              bool deterministic) {
  if (config.n_cases < 1) {
    throw ValidationError("n_cases must be >= 1");
  }
  if (config.max_retries < 1) {
    throw ValidationError("max_retries must be >= 1");
  }
  SatResult sat = IsSatisfiable(model);
  if (!sat.satisfiable) {
    throw UnsatisfiableError("the model constraints admit no test case");
  }

  const std::size_t n_params = model.parameters.size();
  GenerationResult result;
  result.requested = config.n_cases;
  result.selection_counts.assign(n_params, 0);

  std::unordered_set<TestCase, TestCaseHash> seen;
  std::vector<TestCase> out;

  TestCase current = DefaultCase(model);
  if (EvaluateAll(model.constraints, current)) {
    out.push_back(current);
    seen.insert(current);
  } else {
    // The default assignment itself is infeasible; the walk starts from it
    // without emitting and must mutate its way into the valid space.
    result.default_case_valid = false;
  }

  int failures = 0;
  int stuck_bound = deterministic
                        ? std::min<int>(config.max_retries,
                                        static_cast<int>(n_params))
                        : config.max_retries;
  while (static_cast<int>(out.size()) < config.n_cases &&
         failures < stuck_bound) {
    Proposal proposal = propose(current);
    ++result.attempts;
    ++result.selection_counts[proposal.parameter];

    const Parameter& param = model.parameters[proposal.parameter];
    std::uint32_t effective = param.EffectiveSize();
    std::uint32_t held = current.assignment[proposal.parameter];

    // First constraint-satisfying value, scanning cyclically from the
    // proposed one and never revisiting the held value.
    TestCase candidate = current;
    bool found = false;
    std::uint32_t value = proposal.first_value;
    for (std::uint32_t step = 0; step + 1 < effective; ++step) {
      if (value == held) value = (value + 1) % effective;
      candidate.assignment[proposal.parameter] = value;
      if (EvaluateAll(model.constraints, candidate)) {
        found = true;
        break;
      }
      value = (value + 1) % effective;
    }
    if (!found || seen.count(candidate)) {
      ++failures;
      continue;
    }
    out.push_back(candidate);
    seen.insert(candidate);
    current = std::move(candidate);
    failures = 0;
  }

  result.shortfall = config.n_cases - static_cast<int>(out.size());
  result.cases = std::move(out);
  return result;
}

}  // namespace

GenerationResult Generate(const TestModel& model, const WeightVector& weights,
                          const GenerationConfig& config) {
  if (weights.normalized.size() != model.parameters.size()) {
    throw ValidationError("weight vector does not match the model");
  }
  WeightAxis axis = BuildAxis(weights);
  SplitMix64 rng(config.seed);
  auto propose = [&](const TestCase& current) {
    double r = rng.UnitOpen() * 100.0;
    int parameter = axis.SelectParameter(r);
    std::uint32_t effective = model.parameters[parameter].EffectiveSize();
    std::uint32_t next =
        (current.assignment[parameter] + 1) % effective;   // cyclic successor
    return Proposal{parameter, next};
  };
  return MutationWalk(model, config, propose, /*deterministic=*/false);
}

GenerationResult GenerateRandom(const TestModel& model,
                                const GenerationConfig& config) {
  SplitMix64 rng(config.seed);
  auto propose = [&](const TestCase& current) {
    int parameter =
        static_cast<int>(rng.Below(model.parameters.size()));
    std::uint32_t effective = model.parameters[parameter].EffectiveSize();
    std::uint32_t held = current.assignment[parameter];
    // Uniform among the parameter's other values: the held one is skipped,
    // so a case never repeats its predecessor.
    std::uint32_t draw =
        static_cast<std::uint32_t>(rng.Below(effective - 1));
    std::uint32_t target = draw >= held ? draw + 1 : draw;
    return Proposal{parameter, target};
  };
  return MutationWalk(model, config, propose, /*deterministic=*/false);
}

GenerationResult GenerateUnweighted(const TestModel& model,
                                    const GenerationConfig& config) {
  std::size_t cursor = 0;
  auto propose = [&](const TestCase& current) {
    int parameter = static_cast<int>(cursor % model.parameters.size());
    ++cursor;
    std::uint32_t effective = model.parameters[parameter].EffectiveSize();
    std::uint32_t next = (current.assignment[parameter] + 1) % effective;
    return Proposal{parameter, next};
  };
  return MutationWalk(model, config, propose, /*deterministic=*/true);
}

GenerationResult GenerateSuite(const TestModel& model,
                               const WeightVector* weights,
                               const GenerationConfig& config) {
  switch (config.method) {
    case GenerationMethod::kCctg:
      if (weights == nullptr) {
        throw ValidationError("cctg generation needs a weight vector");
      }
      return Generate(model, *weights, config);
    case GenerationMethod::kRandom:
      return GenerateRandom(model, config);
    case GenerationMethod::kUnweighted:
      return GenerateUnweighted(model, config);
  }
  throw ValidationError("unknown generation method");
}

Suite ToSuite(const GenerationResult& result, const TestModel& model,
              const GenerationConfig& config, const WeightVector* weights) {
  Suite suite;
  suite.cases = result.cases;
  suite.ids = MakeCaseIds(result.cases.size());
  suite.meta = {
      {"type", "generated"},
      {"method", MethodName(config.method)},
      {"seed", config.seed},
      {"n_requested", config.n_cases},
      {"max_retries", config.max_retries},
      {"shortfall", result.shortfall},
      {"params", ParamsMeta(model)},
  };
  if (weights != nullptr) {
    suite.meta["weights"] = {{"raw", weights->raw},
                             {"normalized", weights->normalized}};
  }
  return suite;
}

}  // namespace cctg
