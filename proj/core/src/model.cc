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

#include "cctg/model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "cctg/error.h"
#include "cctg/splitmix.h"
#include "cctg/suite_io.h"

namespace cctg {

namespace {

using nlohmann::ordered_json;

// Maps a byte offset from nlohmann's parse_error to 1-based line/column.
std::pair<int, int> LineColumn(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void RejectUnknownKeys(const ordered_json& object, const char* where,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ValidationError(std::string("unknown key '") + key + "' in " +
                            where);
    }
  }
}

std::string NumberToString(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string IntToString(long long value) { return std::to_string(value); }

std::string LiteralToString(const ordered_json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return IntToString(value.get<long long>());
  if (value.is_number_unsigned()) {
    return std::to_string(value.get<unsigned long long>());
  }
  if (value.is_number_float()) return NumberToString(value.get<double>());
  throw ValidationError("value literals must be strings or numbers in " +
                        where);
}

// `depth` concrete values across [min, max]. Regular mode spaces them
// evenly with both endpoints included (depth 1 takes the minimum); random
// mode draws distinct values from a seeded stream and sorts them.
std::vector<std::string> ExpandRange(double min, double max, bool integral,
                                     int depth, RangedMode mode,
                                     std::uint64_t seed,
                                     const std::string& param_name) {
  std::vector<std::string> out;
  out.reserve(depth);
  if (mode == RangedMode::kRegular) {
    if (depth == 1) {
      out.push_back(integral ? IntToString(std::llround(min))
                             : NumberToString(min));
      return out;
    }
    for (int k = 0; k < depth; ++k) {
      double v = min + (max - min) * k / (depth - 1);
      out.push_back(integral ? IntToString(std::llround(v))
                             : NumberToString(v));
    }
    return out;
  }

  SplitMix64 rng(seed);
  if (integral) {
    auto lo = static_cast<long long>(std::llround(min));
    auto hi = static_cast<long long>(std::llround(max));
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::set<long long> picked;
    while (picked.size() < static_cast<std::size_t>(depth)) {
      picked.insert(lo + static_cast<long long>(rng.Below(span)));
    }
    for (long long v : picked) out.push_back(IntToString(v));
  } else {
    std::set<double> picked;
    while (picked.size() < static_cast<std::size_t>(depth)) {
      picked.insert(min + rng.UnitOpen() * (max - min));
    }
    for (double v : picked) out.push_back(NumberToString(v));
  }
  (void)param_name;
  return out;
}

Parameter ParseParameter(const ordered_json& spec, std::size_t ordinal,
                         const ParseOptions& options) {
  if (!spec.is_object()) {
    throw ValidationError("parameters[" + std::to_string(ordinal) +
                          "] must be an object");
  }
  RejectUnknownKeys(spec, "parameter",
                    {"name", "kind", "flag", "values", "range", "depth",
                     "default"});

  Parameter p;
  if (!spec.contains("name") || !spec["name"].is_string() ||
      spec["name"].get<std::string>().empty()) {
    throw ValidationError("parameters[" + std::to_string(ordinal) +
                          "] needs a non-empty string name");
  }
  p.name = spec["name"].get<std::string>();
  const std::string where = "parameter '" + p.name + "'";

  if (!spec.contains("kind") || !spec["kind"].is_string()) {
    throw ValidationError(where + " needs a kind (unary|binary|ranged)");
  }
  std::string kind = spec["kind"].get<std::string>();
  if (kind == "unary") {
    p.kind = ParameterKind::kUnary;
  } else if (kind == "binary") {
    p.kind = ParameterKind::kBinary;
  } else if (kind == "ranged") {
    p.kind = ParameterKind::kRanged;
  } else {
    throw ValidationError(where + " has unknown kind '" + kind + "'");
  }

  if (spec.contains("flag")) {
    if (!spec["flag"].is_string()) {
      throw ValidationError(where + ": flag must be a string");
    }
    p.flag = spec["flag"].get<std::string>();
  }

  switch (p.kind) {
    case ParameterKind::kUnary:
      if (spec.contains("values") || spec.contains("range") ||
          spec.contains("depth")) {
        throw ValidationError(where +
                              ": unary parameters take no values/range/depth");
      }
      break;
    case ParameterKind::kBinary: {
      if (!spec.contains("values") || !spec["values"].is_array() ||
          spec["values"].empty()) {
        throw ValidationError(where +
                              ": binary parameters need a non-empty values "
                              "array");
      }
      if (spec.contains("range") || spec.contains("depth")) {
        throw ValidationError(where +
                              ": binary parameters take no range/depth");
      }
      for (const auto& v : spec["values"]) {
        p.values.push_back(LiteralToString(v, where));
      }
      break;
    }
    case ParameterKind::kRanged: {
      if (spec.contains("values")) {
        throw ValidationError(where + ": ranged parameters take no values");
      }
      if (!spec.contains("range") || !spec["range"].is_object()) {
        throw ValidationError(where + " needs a range {min, max}");
      }
      const auto& range = spec["range"];
      RejectUnknownKeys(range, "range", {"min", "max"});
      if (!range.contains("min") || !range.contains("max") ||
          !range["min"].is_number() || !range["max"].is_number()) {
        throw ValidationError(where + ": range needs numeric min and max");
      }
      p.range_min = range["min"].get<double>();
      p.range_max = range["max"].get<double>();
      p.range_integral = (range["min"].is_number_integer() ||
                          range["min"].is_number_unsigned()) &&
                         (range["max"].is_number_integer() ||
                          range["max"].is_number_unsigned());
      if (p.range_min > p.range_max) {
        throw ValidationError(where + ": range min exceeds max");
      }
      if (!spec.contains("depth") || !spec["depth"].is_number_integer()) {
        throw ValidationError(where + " needs an integer depth");
      }
      p.depth = spec["depth"].get<int>();
      if (p.depth < 1) {
        throw ValidationError(where + ": depth must be >= 1");
      }
      if (p.range_integral) {
        long long size = std::llround(p.range_max) - std::llround(p.range_min) + 1;
        if (p.depth > size) {
          throw ValidationError(where + ": depth " + std::to_string(p.depth) +
                                " exceeds range size " + std::to_string(size));
        }
      }
      p.values = ExpandRange(p.range_min, p.range_max, p.range_integral,
                             p.depth, options.ranged_mode,
                             SplitMix64::Mix(options.ranged_seed, ordinal),
                             p.name);
      break;
    }
  }

  if (spec.contains("default")) {
    if (!spec["default"].is_number_integer() &&
        !spec["default"].is_number_unsigned()) {
      throw ValidationError(where + ": default must be an integer index");
    }
    long long d = spec["default"].get<long long>();
    if (d < 0 || d >= static_cast<long long>(p.EffectiveSize())) {
      throw ValidationError(where + ": default index " + std::to_string(d) +
                            " out of bounds (size " +
                            std::to_string(p.EffectiveSize()) + ")");
    }
    p.default_index = static_cast<std::uint32_t>(d);
  }
  return p;
}

SutDescriptor ParseSut(const ordered_json& spec) {
  SutDescriptor sut;
  if (!spec.is_object()) {
    throw ValidationError("sut must be an object");
  }
  RejectUnknownKeys(spec, "sut", {"command", "args_prefix", "workdir", "env"});
  if (spec.contains("command")) {
    if (!spec["command"].is_string()) {
      throw ValidationError("sut.command must be a string");
    }
    sut.command = spec["command"].get<std::string>();
  }
  if (spec.contains("args_prefix")) {
    if (!spec["args_prefix"].is_array()) {
      throw ValidationError("sut.args_prefix must be an array of strings");
    }
    for (const auto& a : spec["args_prefix"]) {
      if (!a.is_string()) {
        throw ValidationError("sut.args_prefix must be an array of strings");
      }
      sut.args_prefix.push_back(a.get<std::string>());
    }
  }
  if (spec.contains("workdir")) {
    if (!spec["workdir"].is_string()) {
      throw ValidationError("sut.workdir must be a string");
    }
    sut.workdir = spec["workdir"].get<std::string>();
  }
  if (spec.contains("env")) {
    if (!spec["env"].is_object()) {
      throw ValidationError("sut.env must be an object of strings");
    }
    for (const auto& [key, value] : spec["env"].items()) {
      if (!value.is_string()) {
        throw ValidationError("sut.env entries must be strings");
      }
      sut.env[key] = value.get<std::string>();
    }
  }
  return sut;
}

}  // namespace

int TestModel::ParameterIndex(std::string_view name) const {
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (parameters[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool TestModel::operator==(const TestModel& other) const {
  if (parameters != other.parameters || sut != other.sut ||
      constraints.size() != other.constraints.size()) {
    return false;
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!constraints[i].SameTree(other.constraints[i])) return false;
  }
  return true;
}

TestModel ParseModel(std::string_view text, const ParseOptions& options) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = LineColumn(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(),
                     line, column);
  }
  if (!doc.is_object()) {
    throw ValidationError("model file must be a JSON object");
  }
  RejectUnknownKeys(doc, "model", {"parameters", "constraints", "sut"});

  TestModel model;
  if (!doc.contains("parameters") || !doc["parameters"].is_array() ||
      doc["parameters"].empty()) {
    throw ValidationError("model needs a non-empty parameters array");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < doc["parameters"].size(); ++i) {
    Parameter p = ParseParameter(doc["parameters"][i], i, options);
    if (!seen.insert(p.name).second) {
      throw ValidationError("duplicate parameter name '" + p.name + "'");
    }
    model.parameters.push_back(std::move(p));
  }

  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array()) {
      throw ValidationError("constraints must be an array of strings");
    }
    for (const auto& c : doc["constraints"]) {
      if (!c.is_string()) {
        throw ValidationError("constraints must be an array of strings");
      }
      std::string source = c.get<std::string>();
      ConstraintFormula parsed;
      try {
        parsed = ParseConstraint(source);
      } catch (const ParseError& e) {
        throw ParseError("in constraint \"" + source + "\": " + e.what());
      }
      model.constraints.push_back(
          BindConstraint(parsed, model.parameters));
      model.constraint_sources.push_back(std::move(source));
    }
  }

  if (doc.contains("sut")) {
    model.sut = ParseSut(doc["sut"]);
  }
  return model;
}

TestModel LoadModelFile(const std::string& path, const ParseOptions& options) {
  return ParseModel(ReadFileOrThrow(path), options);
}

std::string SerializeModel(const TestModel& model) {
  ordered_json doc;
  doc["parameters"] = ordered_json::array();
  for (const Parameter& p : model.parameters) {
    ordered_json spec;
    spec["name"] = p.name;
    switch (p.kind) {
      case ParameterKind::kUnary:
        spec["kind"] = "unary";
        break;
      case ParameterKind::kBinary:
        spec["kind"] = "binary";
        break;
      case ParameterKind::kRanged:
        spec["kind"] = "ranged";
        break;
    }
    if (p.flag) spec["flag"] = *p.flag;
    if (p.kind == ParameterKind::kBinary) {
      spec["values"] = p.values;
    } else if (p.kind == ParameterKind::kRanged) {
      if (p.range_integral) {
        spec["range"] = {{"min", std::llround(p.range_min)},
                         {"max", std::llround(p.range_max)}};
      } else {
        spec["range"] = {{"min", p.range_min}, {"max", p.range_max}};
      }
      spec["depth"] = p.depth;
    }
    if (p.default_index != 0) spec["default"] = p.default_index;
    doc["parameters"].push_back(std::move(spec));
  }
  doc["constraints"] = model.constraint_sources;
  ordered_json sut;
  sut["command"] = model.sut.command;
  sut["args_prefix"] = model.sut.args_prefix;
  sut["workdir"] = model.sut.workdir;
  sut["env"] = ordered_json::object();
  for (const auto& [key, value] : model.sut.env) sut["env"][key] = value;
  doc["sut"] = std::move(sut);
  return doc.dump(2) + "\n";
}

TestCase DefaultCase(const TestModel& model) {
  TestCase tc;
  tc.assignment.reserve(model.parameters.size());
  for (const Parameter& p : model.parameters) {
    tc.assignment.push_back(p.default_index);
  }
  return tc;
}

std::vector<std::string> RenderArgv(const TestModel& model,
                                    const TestCase& tc) {
  std::vector<std::string> argv;
  for (std::size_t i = 0; i < model.parameters.size(); ++i) {
    const Parameter& p = model.parameters[i];
    std::uint32_t index = tc.assignment[i];
    if (index == 0) continue;   // excluded
    if (p.kind == ParameterKind::kUnary) {
      argv.push_back(p.FlagToken());
    } else {
      if (p.flag) argv.push_back(*p.flag);
      argv.push_back(p.values[index - 1]);
    }
  }
  return argv;
}

CaseValidation ValidateTestCase(const TestModel& model, const TestCase& tc) {
  if (tc.assignment.size() != model.parameters.size()) {
    return {false, CaseFailure::kLengthMismatch,
            "assignment has " + std::to_string(tc.assignment.size()) +
                " entries for " + std::to_string(model.parameters.size()) +
                " parameters"};
  }
  for (std::size_t i = 0; i < model.parameters.size(); ++i) {
    if (tc.assignment[i] >= model.parameters[i].EffectiveSize()) {
      return {false, CaseFailure::kIndexOutOfBounds,
              "index " + std::to_string(tc.assignment[i]) +
                  " out of bounds for parameter '" +
                  model.parameters[i].name + "'"};
    }
  }
  if (!EvaluateAll(model.constraints, tc)) {
    return {false, CaseFailure::kConstraintViolated, "constraint violated"};
  }
  return {true, CaseFailure::kNone, ""};
}

}  // namespace cctg
