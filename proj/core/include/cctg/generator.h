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

#ifndef CCTG_GENERATOR_H_
#define CCTG_GENERATOR_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cctg/coverage.h"
#include "cctg/model.h"

namespace cctg {

enum class GenerationMethod { kCctg, kRandom, kUnweighted };

std::string MethodName(GenerationMethod method);
GenerationMethod MethodFromName(std::string_view name);

struct GenerationConfig {
  int n_cases = 100;
  std::uint64_t seed = 0;
  int max_retries = 1000;   // consecutive failed attempts before early stop
  GenerationMethod method = GenerationMethod::kCctg;
};

// The (0, 100] selection axis. Each parameter with nonzero weight owns the
// half-open segment (previous upper, upper]; segment lengths are the
// normalized weights scaled by 100, and zero-weight parameters own no
// segment at all (they are never selectable).
struct WeightAxis {
  struct Segment {
    int parameter;
    double upper;
  };
  std::vector<Segment> segments;

  // r must lie in (0, 100].
  int SelectParameter(double r) const;
};

WeightAxis BuildAxis(const WeightVector& weights);

struct GenerationResult {
  std::vector<TestCase> cases;
  int requested = 0;
  int shortfall = 0;                 // requested - emitted
  bool default_case_valid = true;    // false: default violated constraints
  std::uint64_t attempts = 0;        // parameter selections, incl. failed
  std::vector<std::uint64_t> selection_counts;   // per parameter
};

// Weighted generation: the first case is the model default; each further
// case redraws r in (0, 100], picks the owning axis parameter, and steps
// that parameter's value to its cyclic successor in the previously emitted
// case. Constraint-violating values are skipped by advancing through the
// parameter's remaining values; a duplicate or fully violating attempt is
// abandoned and r redrawn. Stops early (shortfall) after max_retries
// consecutive failed attempts. Throws UnsatisfiableError when the model
// admits no test case at all.
GenerationResult Generate(const TestModel& model, const WeightVector& weights,
                          const GenerationConfig& config);

// Baseline: parameter chosen uniformly, target value chosen uniformly
// among the parameter's other values. Same dedupe/constraint/retry
// contract as Generate.
GenerationResult GenerateRandom(const TestModel& model,
                                const GenerationConfig& config);

// Baseline: parameters visited round-robin, each advanced to its cyclic
// successor per visit; fully deterministic (the seed is unused). Same
// dedupe/constraint contract.
GenerationResult GenerateUnweighted(const TestModel& model,
                                    const GenerationConfig& config);

// Dispatch on config.method; `weights` is required for kCctg only.
GenerationResult GenerateSuite(const TestModel& model,
                               const WeightVector* weights,
                               const GenerationConfig& config);

// Wraps a generation result for serialization; metadata records method,
// seed, shortfall and the weights used.
Suite ToSuite(const GenerationResult& result, const TestModel& model,
              const GenerationConfig& config, const WeightVector* weights);

}  // namespace cctg

#endif  // CCTG_GENERATOR_H_
