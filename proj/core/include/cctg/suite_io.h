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

#ifndef CCTG_SUITE_IO_H_
#define CCTG_SUITE_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cctg/model.h"
#include "cctg/schedule.h"

namespace cctg {

// File-level view of a test suite: named cases plus a JSON metadata
// header. Works for probing suites, generated suites and externally
// supplied (e.g. regression) suites alike.
//
// Serialized form, newline-delimited UTF-8:
//
//   #%cctg-suite v1
//   #%meta {...single-line JSON object...}
//   tc0 0 1 2
//   tc1 1 1 2
//
// Case lines are `<case_id> <index>...` separated by single spaces; other
// `#` lines are comments. The metadata object carries at least "params"
// (name/size per model parameter) so suite/model mismatches are caught
// on load.
struct Suite {
  std::vector<std::string> ids;
  std::vector<TestCase> cases;
  nlohmann::json meta;

  std::size_t size() const { return cases.size(); }
};

std::vector<std::string> MakeCaseIds(std::size_t count);

std::string SerializeSuite(const Suite& suite);
Suite ParseSuite(std::string_view text);

Suite LoadSuiteFile(const std::string& path);
void WriteSuiteFile(const std::string& path, const Suite& suite);

// Wraps a probing suite for serialization; metadata records the seed,
// test depth, randomized value orders and the change log.
Suite FromProbe(const ProbeSuite& probe, const TestModel& model);

// JSON fragment that identifies a model's parameter shape.
nlohmann::json ParamsMeta(const TestModel& model);

// Throws ValidationError when the suite does not fit the model (length or
// index bounds, or a parameter-shape mismatch recorded in the metadata).
void CheckSuiteMatchesModel(const Suite& suite, const TestModel& model);

std::string ReadFileOrThrow(const std::string& path);
void WriteFileOrThrow(const std::string& path, std::string_view content);

}  // namespace cctg

#endif  // CCTG_SUITE_IO_H_
