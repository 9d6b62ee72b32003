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

#ifndef CCTG_PARAMETER_H_
#define CCTG_PARAMETER_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cctg {

enum class ParameterKind { kUnary, kBinary, kRanged };

// One SUT input parameter. Index 0 of the effective value list always
// denotes the parameter's exclusion; concrete values start at index 1.
// A unary parameter has the two-element effective list {excluded, included};
// binary and ranged parameters have 1 + |values| effective entries.
struct Parameter {
  std::string name;
  ParameterKind kind = ParameterKind::kUnary;
  std::optional<std::string> flag;    // command-line token; name used if unset
  std::vector<std::string> values;    // concrete literals (expansion for ranged)

  // Ranged declaration, kept so a model can be re-serialized.
  double range_min = 0.0;
  double range_max = 0.0;
  bool range_integral = false;
  int depth = 0;

  std::uint32_t default_index = 0;    // into the effective value list

  std::uint32_t EffectiveSize() const {
    if (kind == ParameterKind::kUnary) return 2;
    return static_cast<std::uint32_t>(1 + values.size());
  }

  const std::string& FlagToken() const { return flag ? *flag : name; }

  bool operator==(const Parameter&) const = default;
};

// A complete assignment of one effective-value index per model parameter.
struct TestCase {
  std::vector<std::uint32_t> assignment;

  bool operator==(const TestCase&) const = default;
  auto operator<=>(const TestCase&) const = default;
};

struct TestCaseHash {
  std::size_t operator()(const TestCase& tc) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : tc.assignment) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// How to launch the system under test. `env` entries are added on top of
// the inherited environment. An empty workdir means "inherit".
struct SutDescriptor {
  std::string command;
  std::vector<std::string> args_prefix;
  std::string workdir;
  std::map<std::string, std::string> env;

  bool operator==(const SutDescriptor&) const = default;
};

}  // namespace cctg

#endif  // CCTG_PARAMETER_H_
