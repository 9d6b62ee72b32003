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

#ifndef CCTG_HARNESS_H_
#define CCTG_HARNESS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cctg/coverage.h"
#include "cctg/generator.h"
#include "cctg/model.h"
#include "cctg/suite_io.h"

namespace cctg {

// Outcome of executing one test case against one program. Output digests
// are SHA-256 over the captured bytes, so comparing runs never needs the
// raw output. For timed-out or signaled runs exit_code records the kill
// disposition (128 + signal).
struct ExecutionResult {
  std::string case_id;
  int exit_code = 0;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string stdout_digest;
  std::string stderr_digest;
  std::int64_t duration_ms = 0;
  std::string error;
};

struct Mutant {
  std::string id;
  std::string command;   // same argv convention as the original SUT
};

struct MutantSet {
  std::vector<Mutant> mutants;
};

// Loads a JSON mutant list: {"mutants": [{"id": ..., "command": ...}]}.
// Throws ValidationError on an empty set.
MutantSet LoadMutantsFile(const std::string& path);
MutantSet ParseMutants(std::string_view text);

struct FaultOutcome {
  std::string fault_id;
  bool evaluable = true;    // false: mutant could not be spawned
  bool detected = false;
  std::vector<std::string> detecting_cases;
};

struct EvalRow {
  GenerationMethod method = GenerationMethod::kCctg;
  int repetition = 0;        // 1-based
  int faults_detected = 0;
  int faults_total = 0;      // evaluable mutants only
  double detection_rate = 0.0;
  int suite_size = 0;
  int shortfall = 0;
  std::uint64_t seed = 0;
  std::vector<FaultOutcome> faults;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  int n_cases = 0;
  int repetitions = 0;
};

struct HarnessOptions {
  std::int64_t timeout_ms = 10'000;
  int parallelism = 1;
  bool oracle_stderr = false;   // include stderr digests in the fault oracle
};

// Executes every suite case as `command ++ args_prefix ++ rendered argv`,
// in suite order, up to `parallelism` cases concurrently. Per-case spawn
// failures are recorded in the result; a missing SUT command is a global
// ExecError before anything runs.
std::vector<ExecutionResult> RunSuite(const TestModel& model,
                                      const Suite& suite,
                                      const SutDescriptor& sut,
                                      const HarnessOptions& options);

// Runs each case sequentially, invoking `coverage_hook` after it. The hook
// is a /bin/sh command template; {case_id}, {covdir} and {argv} are
// substituted ({argv} as shell-quoted rendered arguments). The hook must
// leave `<covdir>/<case_id>.cov` behind; a missing or malformed file, or a
// nonzero hook exit, is an error naming the case.
CoverageMap CollectCoverage(const TestModel& model, const Suite& suite,
                            const SutDescriptor& sut,
                            const std::string& coverage_hook,
                            const std::string& covdir,
                            const HarnessOptions& options,
                            CoverageFormat format = CoverageFormat::kLines);

// Differential mutation oracle: a fault is detected iff some case yields a
// differing (stdout digest, exit code, timeout disposition) tuple between
// the original and that mutant (stderr digests included under
// options.oracle_stderr). Mutants that cannot be spawned are reported as
// not evaluable.
std::vector<FaultOutcome> EvaluateMutation(const TestModel& model,
                                           const Suite& suite,
                                           const SutDescriptor& original,
                                           const MutantSet& mutants,
                                           const HarnessOptions& options);

struct ExperimentConfig {
  std::vector<GenerationMethod> methods;
  int n_cases = 100;
  int repetitions = 5;
  std::uint64_t seed = 0;
  int max_retries = 1000;
};

// Observer invoked once per (method, repetition) run with the generated
// suite, before it is evaluated.
using SuiteSink = std::function<void(const EvalRow&, const Suite&)>;

// Full differential evaluation: for every repetition and method a fresh
// suite is generated (seed derived from config.seed, repetition and
// method) and evaluated against every mutant. `weights` is required when
// methods includes kCctg.
EvalReport RunExperiment(const TestModel& model, const SutDescriptor& original,
                         const MutantSet& mutants, const WeightVector* weights,
                         const ExperimentConfig& config,
                         const HarnessOptions& options,
                         const SuiteSink& sink = nullptr);

// CSV renderings. Execution results omit durations so identical runs are
// byte-identical.
std::string ExecutionResultsCsv(const std::vector<ExecutionResult>& results);
// Header: method,repetition,detection_rate,faults_detected,faults_total
std::string SummaryCsv(const EvalReport& report);
// Header: method,repetition,fault_id,detected,detecting_cases
std::string DetailCsv(const EvalReport& report);
// JSON record of the experiment shape (seeds, suite sizes, shortfalls).
std::string ExperimentMetaJson(const EvalReport& report,
                               const ExperimentConfig& config);

}  // namespace cctg

#endif  // CCTG_HARNESS_H_
