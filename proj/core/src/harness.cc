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

#include "cctg/harness.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cctg/csv.h"
#include "cctg/error.h"
#include "cctg/sha256.h"
#include "cctg/splitmix.h"
#include "cctg/subprocess.h"

namespace cctg {

namespace {

std::vector<std::string> CaseArgv(const TestModel& model, const Suite& suite,
                                  std::size_t index,
                                  const SutDescriptor& sut) {
  std::vector<std::string> argv;
  argv.push_back(sut.command);
  argv.insert(argv.end(), sut.args_prefix.begin(), sut.args_prefix.end());
  std::vector<std::string> rendered = RenderArgv(model, suite.cases[index]);
  argv.insert(argv.end(), rendered.begin(), rendered.end());
  return argv;
}

ExecutionResult ToExecutionResult(std::string case_id,
                                  const CommandResult& command) {
  ExecutionResult result;
  result.case_id = std::move(case_id);
  result.exit_code = command.exit_code;
  result.timed_out = command.timed_out;
  result.spawn_failed = command.spawn_failed;
  result.stdout_digest = Sha256Hex(command.stdout_bytes);
  result.stderr_digest = Sha256Hex(command.stderr_bytes);
  result.duration_ms = command.duration_ms;
  result.error = command.error;
  return result;
}

void RequireResolvable(const SutDescriptor& sut, const char* what) {
  if (sut.command.empty()) {
    throw ExecError(std::string(what) + " command is empty");
  }
  if (!ResolveExecutable(sut.command, sut.workdir)) {
    throw ExecError(std::string(what) + " command not found: '" +
                    sut.command + "'");
  }
}

// Fault oracle signature for one execution. Stderr participates only when
// requested; interactive utilities tend to write noise there.
std::string OracleKey(const ExecutionResult& r, bool with_stderr) {
  std::string key = r.stdout_digest + "|" + std::to_string(r.exit_code) +
                    "|" + (r.timed_out ? "T" : "-");
  if (with_stderr) key += "|" + r.stderr_digest;
  return key;
}

std::string FormatRate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", rate);
  return buf;
}

}  // namespace

MutantSet ParseMutants(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("mutants file is not valid JSON: ") +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("mutants") ||
      !doc["mutants"].is_array()) {
    throw ValidationError("mutants file needs a top-level 'mutants' array");
  }
  MutantSet set;
  for (const auto& entry : doc["mutants"]) {
    if (!entry.is_object() || !entry.contains("id") ||
        !entry.contains("command") || !entry["id"].is_string() ||
        !entry["command"].is_string()) {
      throw ValidationError(
          "each mutant needs string fields 'id' and 'command'");
    }
    set.mutants.push_back(
        {entry["id"].get<std::string>(), entry["command"].get<std::string>()});
  }
  if (set.mutants.empty()) {
    throw ValidationError("empty MutantSet");
  }
  return set;
}

MutantSet LoadMutantsFile(const std::string& path) {
  return ParseMutants(ReadFileOrThrow(path));
}

std::vector<ExecutionResult> RunSuite(const TestModel& model,
                                      const Suite& suite,
                                      const SutDescriptor& sut,
                                      const HarnessOptions& options) {
  RequireResolvable(sut, "SUT");
  CheckSuiteMatchesModel(suite, model);

  std::vector<ExecutionResult> results(suite.size());
  if (suite.size() == 0) return results;

  int workers = options.parallelism > 1 ? options.parallelism : 1;
  workers = std::min<int>(workers, static_cast<int>(suite.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= suite.size()) return;
      CommandResult command = RunCommand(CaseArgv(model, suite, i, sut),
                                         sut.workdir, sut.env,
                                         options.timeout_ms);
      results[i] = ToExecutionResult(suite.ids[i], command);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return results;
}

CoverageMap CollectCoverage(const TestModel& model, const Suite& suite,
                            const SutDescriptor& sut,
                            const std::string& coverage_hook,
                            const std::string& covdir,
                            const HarnessOptions& options,
                            CoverageFormat format) {
  if (coverage_hook.empty()) {
    throw ValidationError("coverage hook not configured");
  }
  RequireResolvable(sut, "SUT");
  CheckSuiteMatchesModel(suite, model);
  std::filesystem::create_directories(covdir);

  CoverageMap map;
  // Coverage counters are global SUT state, so cases run strictly one at
  // a time: SUT first, then the hook that must drop <covdir>/<id>.cov.
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const std::string& id = suite.ids[i];
    CommandResult run = RunCommand(CaseArgv(model, suite, i, sut),
                                   sut.workdir, sut.env, options.timeout_ms);
    if (run.spawn_failed) {
      throw ExecError("case '" + id + "' failed to start: " + run.error);
    }

    std::string rendered;
    for (const std::string& token : RenderArgv(model, suite.cases[i])) {
      if (!rendered.empty()) rendered.push_back(' ');
      rendered += ShellQuote(token);
    }
    auto replace_all = [](std::string text, std::string_view placeholder,
                          const std::string& replacement) {
      std::size_t at = 0;
      while ((at = text.find(placeholder, at)) != std::string::npos) {
        text.replace(at, placeholder.size(), replacement);
        at += replacement.size();
      }
      return text;
    };
    std::string hook = replace_all(coverage_hook, "{case_id}", id);
    hook = replace_all(std::move(hook), "{covdir}", covdir);
    hook = replace_all(std::move(hook), "{argv}", rendered);
    CommandResult hooked = RunCommand({"/bin/sh", "-c", hook}, sut.workdir,
                                      sut.env, options.timeout_ms);
    if (hooked.spawn_failed || hooked.exit_code != 0) {
      throw ExecError("coverage hook failed for case '" + id + "' (exit " +
                      std::to_string(hooked.exit_code) + "): " +
                      (hooked.error.empty() ? hooked.stderr_bytes
                                            : hooked.error));
    }

    std::filesystem::path cov_path =
        std::filesystem::path(covdir) / (id + ".cov");
    if (!std::filesystem::exists(cov_path)) {
      throw ExecError("coverage hook produced no file for case '" + id +
                      "': " + cov_path.string());
    }
    try {
      map[id] = ParseCoverage(ReadFileOrThrow(cov_path.string()), format, id,
                              id);
    } catch (const ParseError& e) {
      throw ParseError("in coverage file " + cov_path.string() + ": " +
                       e.what());
    }
  }
  return map;
}

std::vector<FaultOutcome> EvaluateMutation(const TestModel& model,
                                           const Suite& suite,
                                           const SutDescriptor& original,
                                           const MutantSet& mutants,
                                           const HarnessOptions& options) {
  if (mutants.mutants.empty()) {
    throw ValidationError("empty MutantSet");
  }
  std::vector<ExecutionResult> baseline =
      RunSuite(model, suite, original, options);

  std::vector<FaultOutcome> outcomes;
  outcomes.reserve(mutants.mutants.size());
  for (const Mutant& mutant : mutants.mutants) {
    FaultOutcome outcome;
    outcome.fault_id = mutant.id;

    SutDescriptor mutated = original;
    mutated.command = mutant.command;
    std::vector<ExecutionResult> mutated_results;
    try {
      mutated_results = RunSuite(model, suite, mutated, options);
    } catch (const ExecError&) {
      outcome.evaluable = false;
      outcomes.push_back(std::move(outcome));
      continue;
    }
    bool any_spawn_failure = false;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      if (mutated_results[i].spawn_failed) {
        any_spawn_failure = true;
        break;
      }
    }
    if (any_spawn_failure) {
      outcome.evaluable = false;
      outcomes.push_back(std::move(outcome));
      continue;
    }

    for (std::size_t i = 0; i < suite.size(); ++i) {
      if (baseline[i].spawn_failed) continue;   // nothing to compare against
      if (OracleKey(baseline[i], options.oracle_stderr) !=
          OracleKey(mutated_results[i], options.oracle_stderr)) {
        outcome.detected = true;
        outcome.detecting_cases.push_back(suite.ids[i]);
      }
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

EvalReport RunExperiment(const TestModel& model, const SutDescriptor& original,
                         const MutantSet& mutants, const WeightVector* weights,
                         const ExperimentConfig& config,
                         const HarnessOptions& options,
                         const SuiteSink& sink) {
  if (config.methods.empty()) {
    throw ValidationError("experiment needs at least one method");
  }
  if (config.repetitions < 1) {
    throw ValidationError("repetitions must be >= 1");
  }

  EvalReport report;
  report.n_cases = config.n_cases;
  report.repetitions = config.repetitions;

  for (int rep = 1; rep <= config.repetitions; ++rep) {
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      GenerationConfig gen_config;
      gen_config.n_cases = config.n_cases;
      gen_config.max_retries = config.max_retries;
      gen_config.method = config.methods[m];
      gen_config.seed = SplitMix64::Mix(SplitMix64::Mix(config.seed, rep), m);

      GenerationResult generated = GenerateSuite(model, weights, gen_config);
      Suite suite = ToSuite(generated, model, gen_config, weights);

      EvalRow row;
      row.method = gen_config.method;
      row.repetition = rep;
      row.suite_size = static_cast<int>(suite.size());
      row.shortfall = generated.shortfall;
      row.seed = gen_config.seed;
      if (sink) sink(row, suite);

      row.faults = EvaluateMutation(model, suite, original, mutants, options);
      for (const FaultOutcome& fault : row.faults) {
        if (!fault.evaluable) continue;
        ++row.faults_total;
        if (fault.detected) ++row.faults_detected;
      }
      row.detection_rate =
          row.faults_total > 0
              ? static_cast<double>(row.faults_detected) / row.faults_total
              : 0.0;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string ExecutionResultsCsv(const std::vector<ExecutionResult>& results) {
  std::string csv = "case_id,exit_code,timed_out,stdout_digest,stderr_digest\n";
  for (const ExecutionResult& r : results) {
    csv += CsvField(r.case_id) + "," + std::to_string(r.exit_code) + "," +
           (r.timed_out ? "1" : "0") + "," + r.stdout_digest + "," +
           r.stderr_digest + "\n";
  }
  return csv;
}

std::string SummaryCsv(const EvalReport& report) {
  std::string csv = "method,repetition,detection_rate,faults_detected,faults_total\n";
  for (const EvalRow& row : report.rows) {
    csv += MethodName(row.method) + "," + std::to_string(row.repetition) +
           "," + FormatRate(row.detection_rate) + "," +
           std::to_string(row.faults_detected) + "," +
           std::to_string(row.faults_total) + "\n";
  }
  return csv;
}

std::string DetailCsv(const EvalReport& report) {
  std::string csv = "method,repetition,fault_id,detected,detecting_cases\n";
  for (const EvalRow& row : report.rows) {
    for (const FaultOutcome& fault : row.faults) {
      if (!fault.evaluable) continue;
      std::string cases;
      for (const std::string& id : fault.detecting_cases) {
        if (!cases.empty()) cases.push_back(';');
        cases += id;
      }
      csv += MethodName(row.method) + "," + std::to_string(row.repetition) +
             "," + CsvField(fault.fault_id) + "," +
             (fault.detected ? "1" : "0") + "," + CsvField(cases) + "\n";
    }
  }
  return csv;
}

std::string ExperimentMetaJson(const EvalReport& report,
                               const ExperimentConfig& config) {
  nlohmann::json doc;
  doc["n_cases"] = config.n_cases;
  doc["repetitions"] = config.repetitions;
  doc["seed"] = config.seed;
  doc["methods"] = nlohmann::json::array();
  for (GenerationMethod m : config.methods) {
    doc["methods"].push_back(MethodName(m));
  }
  doc["runs"] = nlohmann::json::array();
  for (const EvalRow& row : report.rows) {
    nlohmann::json run;
    run["method"] = MethodName(row.method);
    run["repetition"] = row.repetition;
    run["seed"] = row.seed;
    run["suite_size"] = row.suite_size;
    run["shortfall"] = row.shortfall;
    nlohmann::json skipped = nlohmann::json::array();
    for (const FaultOutcome& fault : row.faults) {
      if (!fault.evaluable) skipped.push_back(fault.fault_id);
    }
    run["not_evaluable"] = std::move(skipped);
    doc["runs"].push_back(std::move(run));
  }
  return doc.dump(2) + "\n";
}

}  // namespace cctg
