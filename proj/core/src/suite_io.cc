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

#include "cctg/suite_io.h"

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>

#include "cctg/error.h"

namespace cctg {

namespace {

constexpr std::string_view kMagic = "#%cctg-suite v1";
constexpr std::string_view kMetaPrefix = "#%meta ";

}  // namespace

std::vector<std::string> MakeCaseIds(std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ids.push_back("tc" + std::to_string(i));
  }
  return ids;
}

std::string SerializeSuite(const Suite& suite) {
  std::string out(kMagic);
  out.push_back('\n');
  if (!suite.meta.is_null()) {
    out += kMetaPrefix;
    out += suite.meta.dump();
    out.push_back('\n');
  }
  for (std::size_t i = 0; i < suite.cases.size(); ++i) {
    out += suite.ids[i];
    for (std::uint32_t v : suite.cases[i].assignment) {
      out.push_back(' ');
      out += std::to_string(v);
    }
    out.push_back('\n');
  }
  return out;
}

Suite ParseSuite(std::string_view text) {
  Suite suite;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool saw_magic = false;
  std::unordered_set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kMagic) {
        throw ParseError("not a cctg suite file (missing '" +
                             std::string(kMagic) + "' header)",
                         1, 1);
      }
      saw_magic = true;
      continue;
    }
    if (line.rfind(kMetaPrefix, 0) == 0) {
      try {
        suite.meta = nlohmann::json::parse(line.substr(kMetaPrefix.size()));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad suite metadata: ") + e.what(),
                         line_no, 1);
      }
      continue;
    }
    if (line.empty() || line[0] == '#') continue;

    std::istringstream fields(line);
    std::string id;
    fields >> id;
    if (!seen_ids.insert(id).second) {
      throw ParseError("duplicate case id '" + id + "'", line_no, 1);
    }
    TestCase tc;
    long long value;
    while (fields >> value) {
      if (value < 0) {
        throw ParseError("negative value index", line_no, 1);
      }
      tc.assignment.push_back(static_cast<std::uint32_t>(value));
    }
    if (!fields.eof()) {
      throw ParseError("malformed case line", line_no, 1);
    }
    if (tc.assignment.empty()) {
      throw ParseError("case line without value indices", line_no, 1);
    }
    suite.ids.push_back(std::move(id));
    suite.cases.push_back(std::move(tc));
  }
  if (!saw_magic) {
    throw ParseError("empty suite file", 1, 1);
  }
  return suite;
}

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileOrThrow(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot open '" + path + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error("failed writing '" + path + "'");
  }
}

Suite LoadSuiteFile(const std::string& path) {
  return ParseSuite(ReadFileOrThrow(path));
}

void WriteSuiteFile(const std::string& path, const Suite& suite) {
  WriteFileOrThrow(path, SerializeSuite(suite));
}

nlohmann::json ParamsMeta(const TestModel& model) {
  nlohmann::json params = nlohmann::json::array();
  for (const Parameter& p : model.parameters) {
    params.push_back({{"name", p.name}, {"size", p.EffectiveSize()}});
  }
  return params;
}

Suite FromProbe(const ProbeSuite& probe, const TestModel& model) {
  Suite suite;
  suite.cases = probe.cases;
  suite.ids = MakeCaseIds(probe.cases.size());

  nlohmann::json change_log = nlohmann::json::array();
  for (const ChangeEntry& e : probe.change_log) {
    change_log.push_back({e.case_index, e.parameter, e.from_index,
                          e.to_index, e.skipped});
  }
  suite.meta = {
      {"type", "probe"},
      {"seed", probe.seed},
      {"test_depth", probe.test_depth},
      {"advance_order", probe.order == AdvanceOrder::kRoundRobin
                            ? "round-robin"
                            : "exhaust-first"},
      {"params", ParamsMeta(model)},
      {"rv_tables", probe.rv_tables},
      {"change_log", std::move(change_log)},
  };
  return suite;
}

void CheckSuiteMatchesModel(const Suite& suite, const TestModel& model) {
  if (suite.meta.is_object() && suite.meta.contains("params")) {
    const auto& params = suite.meta["params"];
    if (!params.is_array() || params.size() != model.parameters.size()) {
      throw ValidationError(
          "suite was produced for a different model (parameter count "
          "mismatch)");
    }
    for (std::size_t i = 0; i < model.parameters.size(); ++i) {
      if (params[i].value("name", "") != model.parameters[i].name ||
          params[i].value("size", 0u) != model.parameters[i].EffectiveSize()) {
        throw ValidationError(
            "suite was produced for a different model (parameter '" +
            model.parameters[i].name + "' mismatch)");
      }
    }
  }
  for (std::size_t i = 0; i < suite.cases.size(); ++i) {
    const TestCase& tc = suite.cases[i];
    if (tc.assignment.size() != model.parameters.size()) {
      throw ValidationError("case '" + suite.ids[i] +
                            "' does not match the model parameter count");
    }
    for (std::size_t p = 0; p < model.parameters.size(); ++p) {
      if (tc.assignment[p] >= model.parameters[p].EffectiveSize()) {
        throw ValidationError("case '" + suite.ids[i] +
                              "' has an out-of-bounds index for parameter '" +
                              model.parameters[p].name + "'");
      }
    }
  }
}

}  // namespace cctg
