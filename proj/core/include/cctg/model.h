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

#ifndef CCTG_MODEL_H_
#define CCTG_MODEL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cctg/constraints.h"
#include "cctg/parameter.h"

namespace cctg {

// The SUT test model: parameters with their value domains, the constraint
// set over them, and how to launch the SUT.
struct TestModel {
  std::vector<Parameter> parameters;
  std::vector<std::string> constraint_sources;   // as authored
  std::vector<ConstraintFormula> constraints;    // bound to `parameters`
  SutDescriptor sut;

  int ParameterIndex(std::string_view name) const;

  // Structural equality; constraints compare by tree, not source text.
  bool operator==(const TestModel& other) const;
};

// How ranged parameters are expanded to `depth` concrete values.
enum class RangedMode {
  kRegular,   // evenly spaced across the range, endpoints included
  kRandom,    // seeded random draw of `depth` distinct values
};

struct ParseOptions {
  RangedMode ranged_mode = RangedMode::kRegular;
  std::uint64_t ranged_seed = 0;   // used by kRandom only
};

// Parses and validates a model file (JSON object with top-level keys
// `parameters`, `constraints`, `sut`; unknown keys are an error — see the
// schema in the README). Ranged parameters are expanded at parse time.
// Throws ParseError on malformed JSON (with line/column) and
// ValidationError on semantic errors naming the offending element.
TestModel ParseModel(std::string_view text, const ParseOptions& options = {});
TestModel LoadModelFile(const std::string& path,
                        const ParseOptions& options = {});

// Inverse of ParseModel up to structural equality: parsing the output with
// the same options yields an equal model.
std::string SerializeModel(const TestModel& model);

// Every parameter at its declared default index.
TestCase DefaultCase(const TestModel& model);

// Renders a test case as SUT command-line tokens, in model parameter
// order. Excluded parameters contribute nothing; an included unary
// parameter contributes its flag token; binary/ranged parameters
// contribute flag + value (value only when no flag is declared).
std::vector<std::string> RenderArgv(const TestModel& model,
                                    const TestCase& tc);

enum class CaseFailure {
  kNone,
  kLengthMismatch,
  kIndexOutOfBounds,
  kConstraintViolated,
};

struct CaseValidation {
  bool ok = false;
  CaseFailure reason = CaseFailure::kNone;
  std::string detail;

  explicit operator bool() const { return ok; }
};

// Never throws: reports the first failed check as a reason code.
CaseValidation ValidateTestCase(const TestModel& model, const TestCase& tc);

inline SatResult IsSatisfiable(const TestModel& model,
                               std::uint64_t node_budget = kDefaultNodeBudget) {
  return IsSatisfiable(model.parameters, model.constraints, node_budget);
}

}  // namespace cctg

#endif  // CCTG_MODEL_H_
