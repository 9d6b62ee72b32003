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

#include "cctg/coverage.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

#include "cctg/error.h"

namespace cctg {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

CoverageRecord ParseLinesFormat(std::string_view content,
                                std::string case_id) {
  CoverageRecord record;
  record.case_id = std::move(case_id);
  record.covered_lines.emplace();
  std::istringstream in{std::string(content)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t colon = line.rfind(':');
    if (colon == std::string_view::npos || colon + 1 >= line.size()) {
      throw ParseError("expected 'path:lineno', got '" + std::string(line) +
                           "'",
                       line_no, 1);
    }
    std::string_view path = Trim(line.substr(0, colon));
    std::string_view number = Trim(line.substr(colon + 1));
    std::uint32_t lineno = 0;
    auto [end, ec] = std::from_chars(number.data(),
                                     number.data() + number.size(), lineno);
    if (ec != std::errc() || end != number.data() + number.size()) {
      throw ParseError("bad line number '" + std::string(number) + "'",
                       line_no, 1);
    }
    record.covered_lines->emplace(std::string(path), lineno);
  }
  record.scalar = record.covered_lines->size();
  return record;
}

CoverageRecord ParseGcovFormat(std::string_view content, std::string case_id,
                               std::string_view source_hint) {
  CoverageRecord record;
  record.case_id = std::move(case_id);
  record.covered_lines.emplace();
  std::string source{source_hint};
  std::istringstream in{std::string(content)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (Trim(raw).empty()) continue;
    std::string_view line = raw;
    std::size_t first = line.find(':');
    if (first == std::string_view::npos) {
      throw ParseError("gcov line without count field", line_no, 1);
    }
    std::size_t second = line.find(':', first + 1);
    if (second == std::string_view::npos) {
      throw ParseError("gcov line without line number field", line_no, 1);
    }
    std::string_view count = Trim(line.substr(0, first));
    std::string_view number = Trim(line.substr(first + 1, second - first - 1));
    std::uint32_t lineno = 0;
    auto [end, ec] = std::from_chars(number.data(),
                                     number.data() + number.size(), lineno);
    if (ec != std::errc() || end != number.data() + number.size()) {
      throw ParseError("bad gcov line number '" + std::string(number) + "'",
                       line_no, 1);
    }
    std::string_view rest = line.substr(second + 1);
    if (lineno == 0) {
      // Preamble metadata; pick up the Source: path when present.
      if (rest.rfind("Source:", 0) == 0) {
        source = std::string(Trim(rest.substr(7)));
      }
      continue;
    }
    if (count == "-") continue;                       // non-executable
    if (count == "#####" || count == "=====") continue;   // unexecuted
    // Execution count, possibly suffixed (e.g. "12*" for partial blocks).
    std::uint64_t executions = 0;
    auto [cend, cec] = std::from_chars(count.data(),
                                       count.data() + count.size(),
                                       executions);
    if (cec != std::errc() || cend == count.data()) {
      throw ParseError("bad gcov execution count '" + std::string(count) +
                           "'",
                       line_no, 1);
    }
    if (executions > 0) {
      record.covered_lines->emplace(source, lineno);
    }
  }
  record.scalar = record.covered_lines->size();
  return record;
}

}  // namespace

CoverageRecord ParseCoverage(std::string_view content, CoverageFormat format,
                             std::string case_id,
                             std::string_view source_hint) {
  switch (format) {
    case CoverageFormat::kLines:
      return ParseLinesFormat(content, std::move(case_id));
    case CoverageFormat::kGcov:
      return ParseGcovFormat(content, std::move(case_id), source_hint);
  }
  throw ValidationError("unknown coverage format");
}

CoverageMap LoadCoverageDir(const std::string& dir,
                            const std::vector<std::string>& ids,
                            CoverageFormat format) {
  CoverageMap map;
  for (const std::string& id : ids) {
    std::filesystem::path path = std::filesystem::path(dir) / (id + ".cov");
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      throw ExecError("missing coverage file for case '" + id + "': " +
                      path.string());
    }
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      map[id] = ParseCoverage(buffer.str(), format, id, id);
    } catch (const ParseError& e) {
      throw ParseError("in coverage file " + path.string() + ": " + e.what());
    }
  }
  return map;
}

double ParameterWeight(const std::vector<TestCase>& cases,
                       const std::vector<const CoverageRecord*>& records,
                       int parameter, WeightMetric metric) {
  // Group cases that agree on every parameter except `parameter`.
  std::unordered_map<TestCase, std::vector<std::size_t>, TestCaseHash> groups;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    TestCase key = cases[i];
    key.assignment[parameter] = 0;
    groups[std::move(key)].push_back(i);
  }

  // Each group of two or more contributes its coverage spread; singleton
  // groups contribute nothing.
  std::vector<double> spreads;
  for (const auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    if (metric == WeightMetric::kScalar) {
      std::uint64_t lo = records[members[0]]->scalar;
      std::uint64_t hi = lo;
      for (std::size_t k = 1; k < members.size(); ++k) {
        lo = std::min(lo, records[members[k]]->scalar);
        hi = std::max(hi, records[members[k]]->scalar);
      }
      spreads.push_back(static_cast<double>(hi - lo));
    } else {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          const auto& ra = records[members[a]]->covered_lines;
          const auto& rb = records[members[b]]->covered_lines;
          if (!ra || !rb) {
            throw ValidationError(
                "symmetric-difference metric needs covered-line sets; case '" +
                records[members[!ra ? a : b]]->case_id +
                "' has a scalar-only record");
          }
          std::size_t common = 0;
          const auto& small = ra->size() <= rb->size() ? *ra : *rb;
          const auto& large = ra->size() <= rb->size() ? *rb : *ra;
          for (const auto& entry : small) {
            if (large.count(entry)) ++common;
          }
          spreads.push_back(
              static_cast<double>(ra->size() + rb->size() - 2 * common));
        }
      }
    }
  }
  if (spreads.empty()) return 0.0;
  double sum = 0.0;
  for (double s : spreads) sum += s;
  return sum / static_cast<double>(spreads.size());
}

WeightVector ComputeWeights(const Suite& suite, const CoverageMap& coverage,
                            const TestModel& model, WeightMetric metric) {
  std::vector<const CoverageRecord*> records;
  records.reserve(suite.cases.size());
  for (const std::string& id : suite.ids) {
    auto it = coverage.find(id);
    if (it == coverage.end()) {
      throw ValidationError("no coverage record for case '" + id + "'");
    }
    records.push_back(&it->second);
  }

  WeightVector weights;
  weights.raw.reserve(model.parameters.size());
  double total = 0.0;
  for (std::size_t p = 0; p < model.parameters.size(); ++p) {
    double w = ParameterWeight(suite.cases, records, static_cast<int>(p),
                               metric);
    weights.raw.push_back(w);
    total += w;
  }
  if (total > 0.0) {
    for (double w : weights.raw) weights.normalized.push_back(w / total);
  } else {
    // No parameter moved coverage at all; fall back to uniform weights.
    weights.degenerate = true;
    weights.normalized.assign(model.parameters.size(),
                              1.0 / static_cast<double>(
                                        model.parameters.size()));
  }
  return weights;
}

std::string SerializeWeights(const WeightVector& weights,
                             const TestModel& model, WeightMetric metric) {
  nlohmann::json doc;
  doc["parameters"] = nlohmann::json::array();
  for (const Parameter& p : model.parameters) {
    doc["parameters"].push_back(p.name);
  }
  doc["raw"] = weights.raw;
  doc["normalized"] = weights.normalized;
  doc["degenerate"] = weights.degenerate;
  doc["metric"] = metric == WeightMetric::kScalar ? "scalar" : "symdiff";
  return doc.dump(2) + "\n";
}

WeightVector ParseWeights(std::string_view text, const TestModel& model) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("weights file is not valid JSON: ") +
                     e.what());
  }
  WeightVector weights;
  if (!doc.is_object() || !doc.contains("raw") || !doc.contains("normalized")) {
    throw ValidationError("weights file needs 'raw' and 'normalized' arrays");
  }
  if (doc.contains("parameters")) {
    const auto& names = doc["parameters"];
    if (!names.is_array() || names.size() != model.parameters.size()) {
      throw ValidationError(
          "weights were computed for a different model (parameter count)");
    }
    for (std::size_t i = 0; i < model.parameters.size(); ++i) {
      if (names[i].get<std::string>() != model.parameters[i].name) {
        throw ValidationError(
            "weights were computed for a different model (parameter '" +
            model.parameters[i].name + "')");
      }
    }
  }
  weights.raw = doc["raw"].get<std::vector<double>>();
  weights.normalized = doc["normalized"].get<std::vector<double>>();
  weights.degenerate = doc.value("degenerate", false);
  if (weights.raw.size() != model.parameters.size() ||
      weights.normalized.size() != model.parameters.size()) {
    throw ValidationError("weights arrays do not match the parameter count");
  }
  double sum = 0.0;
  for (double w : weights.normalized) {
    if (w < 0.0) throw ValidationError("normalized weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("normalized weights must sum to 1");
  }
  return weights;
}

}  // namespace cctg
