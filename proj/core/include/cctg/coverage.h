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

#ifndef CCTG_COVERAGE_H_
#define CCTG_COVERAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cctg/suite_io.h"

namespace cctg {

// Per-test-case line coverage. `scalar` is the count of covered lines;
// the covered-line set is optional (scalar-only records are valid).
struct CoverageRecord {
  std::string case_id;
  std::uint64_t scalar = 0;
  std::optional<std::set<std::pair<std::string, std::uint32_t>>> covered_lines;
};

using CoverageMap = std::map<std::string, CoverageRecord>;

enum class CoverageFormat {
  kLines,   // canonical: one `path:lineno` per line, `#` comments
  kGcov,    // gcov annotated-source output
};

// Parses one coverage report. The `lines` format yields the covered-line
// set directly (duplicates deduplicated). The gcov adapter keeps lines
// whose execution count is positive; `#####`/`=====` mean unexecuted and
// `-` non-executable. `source_hint` names gcov reports lacking a Source:
// preamble. An empty report is a valid record with scalar 0.
CoverageRecord ParseCoverage(std::string_view content, CoverageFormat format,
                             std::string case_id,
                             std::string_view source_hint = "");

// Loads `<dir>/<case_id>.cov` for every id. Throws ExecError naming the
// case when a file is missing, ParseError when one is malformed.
CoverageMap LoadCoverageDir(const std::string& dir,
                            const std::vector<std::string>& ids,
                            CoverageFormat format);

enum class WeightMetric {
  kScalar,     // max - min of covered-line counts within a group
  kSymdiff,    // covered-line set symmetric difference, per pair
};

// Per-parameter impact weights. `raw` is the mean coverage spread over
// groups of cases identical except in that parameter (units: lines);
// `normalized` sums to 1. When every raw weight is zero the normalized
// vector falls back to uniform and `degenerate` is set.
struct WeightVector {
  std::vector<double> raw;
  std::vector<double> normalized;
  bool degenerate = false;
};

// Impact of one parameter: partitions `cases` into groups that agree on
// every other parameter, records each >=2-sized group's coverage spread
// (max - min scalar, or pairwise set symmetric differences under
// kSymdiff), and returns the mean. Zero when no group qualifies.
// `records` is aligned with `cases`.
double ParameterWeight(const std::vector<TestCase>& cases,
                       const std::vector<const CoverageRecord*>& records,
                       int parameter, WeightMetric metric = WeightMetric::kScalar);

// ParameterWeight for every model parameter plus normalization.
// Throws ValidationError naming the first case without a coverage record.
WeightVector ComputeWeights(const Suite& suite, const CoverageMap& coverage,
                            const TestModel& model,
                            WeightMetric metric = WeightMetric::kScalar);

std::string SerializeWeights(const WeightVector& weights,
                             const TestModel& model, WeightMetric metric);
WeightVector ParseWeights(std::string_view text, const TestModel& model);

}  // namespace cctg

#endif  // CCTG_COVERAGE_H_
