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

// Command-line front end for the coverage-weighted test generation
// pipeline. The pipeline is file-mediated so any stage can be replaced by
// external tooling:
//
//   probe -> run --cov-hook -> weights -> generate -> run/evaluate/experiment
//
// Exit codes: 0 success, 1 domain error (unsatisfiable model, generation
// shortfall below --min-cases), 2 usage or input/output error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cctg/coverage.h"
#include "cctg/error.h"
#include "cctg/generator.h"
#include "cctg/harness.h"
#include "cctg/model.h"
#include "cctg/schedule.h"
#include "cctg/splitmix.h"
#include "cctg/suite_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

bool g_verbose = false;

void Note(const std::string& message) {
  if (g_verbose) std::fprintf(stderr, "cctg: %s\n", message.c_str());
}

// Seeds default to fresh entropy; the chosen value is always printed so a
// run can be reproduced after the fact.
std::uint64_t PickSeed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device device;
  std::uint64_t picked =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  std::fprintf(stderr, "cctg: seed %llu\n",
               static_cast<unsigned long long>(picked));
  return picked;
}

std::string CovdirOrEnv(const std::string& covdir) {
  if (!covdir.empty()) return covdir;
  const char* env = std::getenv("CCTG_COVDIR");
  if (env != nullptr && *env != '\0') return env;
  throw cctg::ValidationError(
      "no coverage directory: pass --covdir or set CCTG_COVDIR");
}

cctg::CoverageFormat FormatFromName(const std::string& name) {
  if (name == "lines") return cctg::CoverageFormat::kLines;
  if (name == "gcov") return cctg::CoverageFormat::kGcov;
  throw cctg::ValidationError("unknown coverage format '" + name +
                              "' (expected lines|gcov)");
}

cctg::WeightMetric MetricFromName(const std::string& name) {
  if (name == "scalar") return cctg::WeightMetric::kScalar;
  if (name == "symdiff") return cctg::WeightMetric::kSymdiff;
  throw cctg::ValidationError("unknown weight metric '" + name +
                              "' (expected scalar|symdiff)");
}

struct ProbeArgs {
  std::string model_path;
  std::string out_path;
  int test_depth = 2;
  std::optional<std::uint64_t> seed;
  std::string advance_order = "round-robin";
  std::string ranged_mode = "regular";
  std::uint64_t ranged_seed = 0;
};

int CmdProbe(const ProbeArgs& args) {
  cctg::ParseOptions options;
  if (args.ranged_mode == "random") {
    options.ranged_mode = cctg::RangedMode::kRandom;
    options.ranged_seed = args.ranged_seed;
  } else if (args.ranged_mode != "regular") {
    throw cctg::ValidationError("unknown ranged mode '" + args.ranged_mode +
                                "' (expected regular|random)");
  }
  cctg::TestModel model = cctg::LoadModelFile(args.model_path, options);
  cctg::AdvanceOrder order = cctg::AdvanceOrder::kRoundRobin;
  if (args.advance_order == "exhaust-first") {
    order = cctg::AdvanceOrder::kExhaustFirst;
  } else if (args.advance_order != "round-robin") {
    throw cctg::ValidationError("unknown advance order '" +
                                args.advance_order +
                                "' (expected round-robin|exhaust-first)");
  }
  std::uint64_t seed = PickSeed(args.seed);
  cctg::ProbeSuite probe =
      cctg::BuildProbeSuite(model, args.test_depth, seed, order);
  cctg::WriteSuiteFile(args.out_path, cctg::FromProbe(probe, model));
  Note("wrote " + std::to_string(probe.cases.size()) + " probe cases to " +
       args.out_path);
  return kExitOk;
}

struct WeightsArgs {
  std::string model_path;
  std::string suite_path;
  std::string covdir;
  std::string out_path;
  std::string format = "lines";
  std::string metric = "scalar";
};

int CmdWeights(const WeightsArgs& args) {
  cctg::TestModel model = cctg::LoadModelFile(args.model_path);
  cctg::Suite suite = cctg::LoadSuiteFile(args.suite_path);
  cctg::CheckSuiteMatchesModel(suite, model);
  cctg::CoverageMap coverage = cctg::LoadCoverageDir(
      CovdirOrEnv(args.covdir), suite.ids, FormatFromName(args.format));
  cctg::WeightMetric metric = MetricFromName(args.metric);
  cctg::WeightVector weights =
      cctg::ComputeWeights(suite, coverage, model, metric);
  if (weights.degenerate) {
    std::fprintf(stderr,
                 "cctg: warning: no parameter moved coverage; weights are "
                 "degenerate (uniform)\n");
  }
  cctg::WriteFileOrThrow(args.out_path,
                         cctg::SerializeWeights(weights, model, metric));
  Note("wrote weights to " + args.out_path);
  return kExitOk;
}

struct GenerateArgs {
  std::string model_path;
  std::string out_path;
  std::string weights_path;
  std::string method = "cctg";
  int n_cases = 100;
  int max_retries = 1000;
  int min_cases = 1;
  std::optional<std::uint64_t> seed;
};

int CmdGenerate(const GenerateArgs& args) {
  cctg::TestModel model = cctg::LoadModelFile(args.model_path);
  cctg::GenerationConfig config;
  config.method = cctg::MethodFromName(args.method);
  config.n_cases = args.n_cases;
  config.max_retries = args.max_retries;
  config.seed = PickSeed(args.seed);

  std::optional<cctg::WeightVector> weights;
  if (config.method == cctg::GenerationMethod::kCctg) {
    if (args.weights_path.empty()) {
      throw cctg::ValidationError("--method cctg needs --weights");
    }
    weights = cctg::ParseWeights(cctg::ReadFileOrThrow(args.weights_path),
                                 model);
  }
  cctg::GenerationResult result =
      cctg::GenerateSuite(model, weights ? &*weights : nullptr, config);
  cctg::WriteSuiteFile(
      args.out_path,
      cctg::ToSuite(result, model, config, weights ? &*weights : nullptr));
  if (result.shortfall > 0) {
    std::fprintf(stderr,
                 "cctg: warning: value space exhausted, generated %d of %d "
                 "cases (shortfall %d)\n",
                 static_cast<int>(result.cases.size()), config.n_cases,
                 result.shortfall);
  }
  Note("wrote " + std::to_string(result.cases.size()) + " cases to " +
       args.out_path);
  if (static_cast<int>(result.cases.size()) < args.min_cases) {
    std::fprintf(stderr, "cctg: error: fewer than --min-cases %d generated\n",
                 args.min_cases);
    return kExitDomain;
  }
  return kExitOk;
}

struct RunArgs {
  std::string model_path;
  std::string suite_path;
  std::string out_path;
  std::string cov_hook;
  std::string covdir;
  std::string format = "lines";
  std::int64_t timeout_ms = 10'000;
  int parallelism = 1;
};

int CmdRun(const RunArgs& args) {
  cctg::TestModel model = cctg::LoadModelFile(args.model_path);
  cctg::Suite suite = cctg::LoadSuiteFile(args.suite_path);
  cctg::HarnessOptions options;
  options.timeout_ms = args.timeout_ms;
  options.parallelism = args.parallelism;

  if (!args.cov_hook.empty()) {
    cctg::CoverageMap coverage = cctg::CollectCoverage(
        model, suite, model.sut, args.cov_hook, CovdirOrEnv(args.covdir),
        options, FormatFromName(args.format));
    Note("collected coverage for " + std::to_string(coverage.size()) +
         " cases");
    return kExitOk;
  }

  std::vector<cctg::ExecutionResult> results =
      cctg::RunSuite(model, suite, model.sut, options);
  std::string csv = cctg::ExecutionResultsCsv(results);
  if (args.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    cctg::WriteFileOrThrow(args.out_path, csv);
    Note("wrote execution results to " + args.out_path);
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string model_path;
  std::string suite_path;
  std::string mutants_path;
  std::string out_path;
  std::string detail_path;
  std::int64_t timeout_ms = 10'000;
  int parallelism = 1;
  bool oracle_stderr = false;
};

int CmdEvaluate(const EvaluateArgs& args) {
  cctg::TestModel model = cctg::LoadModelFile(args.model_path);
  cctg::Suite suite = cctg::LoadSuiteFile(args.suite_path);
  cctg::MutantSet mutants = cctg::LoadMutantsFile(args.mutants_path);
  cctg::HarnessOptions options;
  options.timeout_ms = args.timeout_ms;
  options.parallelism = args.parallelism;
  options.oracle_stderr = args.oracle_stderr;

  std::vector<cctg::FaultOutcome> outcomes =
      cctg::EvaluateMutation(model, suite, model.sut, mutants, options);

  cctg::EvalReport report;
  report.n_cases = static_cast<int>(suite.size());
  report.repetitions = 1;
  cctg::EvalRow row;
  row.method = cctg::GenerationMethod::kCctg;   // method is irrelevant here
  row.repetition = 1;
  row.suite_size = static_cast<int>(suite.size());
  row.faults = std::move(outcomes);
  for (const cctg::FaultOutcome& fault : row.faults) {
    if (!fault.evaluable) {
      std::fprintf(stderr,
                   "cctg: warning: mutant '%s' could not be run; excluded "
                   "from totals\n",
                   fault.fault_id.c_str());
      continue;
    }
    ++row.faults_total;
    if (fault.detected) ++row.faults_detected;
  }
  row.detection_rate =
      row.faults_total > 0
          ? static_cast<double>(row.faults_detected) / row.faults_total
          : 0.0;
  report.rows.push_back(std::move(row));

  std::string detail = cctg::DetailCsv(report);
  if (!args.detail_path.empty()) {
    cctg::WriteFileOrThrow(args.detail_path, detail);
  }
  std::string summary = cctg::SummaryCsv(report);
  if (args.out_path.empty()) {
    std::fputs(summary.c_str(), stdout);
  } else {
    cctg::WriteFileOrThrow(args.out_path, summary);
    Note("wrote evaluation summary to " + args.out_path);
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string model_path;
  std::string mutants_path;
  std::string weights_path;
  std::string out_path;
  std::string detail_path;
  std::string meta_path;
  std::string suite_dir;
  std::string methods = "cctg,random,unweighted";
  int n_cases = 100;
  int repetitions = 5;
  int max_retries = 1000;
  std::optional<std::uint64_t> seed;
  std::int64_t timeout_ms = 10'000;
  int parallelism = 1;
  bool oracle_stderr = false;
};

int CmdExperiment(const ExperimentArgs& args) {
  cctg::TestModel model = cctg::LoadModelFile(args.model_path);
  cctg::MutantSet mutants = cctg::LoadMutantsFile(args.mutants_path);

  cctg::ExperimentConfig config;
  config.n_cases = args.n_cases;
  config.repetitions = args.repetitions;
  config.max_retries = args.max_retries;
  config.seed = PickSeed(args.seed);
  std::size_t start = 0;
  while (start <= args.methods.size()) {
    std::size_t end = args.methods.find(',', start);
    if (end == std::string::npos) end = args.methods.size();
    std::string name = args.methods.substr(start, end - start);
    if (!name.empty()) config.methods.push_back(cctg::MethodFromName(name));
    start = end + 1;
  }

  std::optional<cctg::WeightVector> weights;
  bool wants_cctg = false;
  for (cctg::GenerationMethod m : config.methods) {
    wants_cctg = wants_cctg || m == cctg::GenerationMethod::kCctg;
  }
  if (wants_cctg) {
    if (args.weights_path.empty()) {
      throw cctg::ValidationError("methods include cctg: --weights required");
    }
    weights = cctg::ParseWeights(cctg::ReadFileOrThrow(args.weights_path),
                                 model);
  }

  cctg::HarnessOptions options;
  options.timeout_ms = args.timeout_ms;
  options.parallelism = args.parallelism;
  options.oracle_stderr = args.oracle_stderr;

  cctg::SuiteSink sink;
  if (!args.suite_dir.empty()) {
    std::filesystem::create_directories(args.suite_dir);
    sink = [&](const cctg::EvalRow& row, const cctg::Suite& suite) {
      std::filesystem::path path =
          std::filesystem::path(args.suite_dir) /
          (cctg::MethodName(row.method) + "_rep" +
           std::to_string(row.repetition) + ".suite");
      cctg::WriteSuiteFile(path.string(), suite);
    };
  }

  cctg::EvalReport report =
      cctg::RunExperiment(model, model.sut, mutants,
                          weights ? &*weights : nullptr, config, options,
                          sink);

  for (const cctg::EvalRow& row : report.rows) {
    for (const cctg::FaultOutcome& fault : row.faults) {
      if (!fault.evaluable) {
        std::fprintf(stderr,
                     "cctg: warning: mutant '%s' could not be run "
                     "(method %s, repetition %d)\n",
                     fault.fault_id.c_str(),
                     cctg::MethodName(row.method).c_str(), row.repetition);
      }
    }
  }

  std::string summary = cctg::SummaryCsv(report);
  if (args.out_path.empty()) {
    std::fputs(summary.c_str(), stdout);
  } else {
    cctg::WriteFileOrThrow(args.out_path, summary);
    Note("wrote experiment summary to " + args.out_path);
  }
  if (!args.detail_path.empty()) {
    cctg::WriteFileOrThrow(args.detail_path, cctg::DetailCsv(report));
  }
  if (!args.meta_path.empty()) {
    cctg::WriteFileOrThrow(args.meta_path,
                           cctg::ExperimentMetaJson(report, config));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage-weighted test case generation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");
  app.add_flag("--verbose", g_verbose, "chatty progress on stderr");

  ProbeArgs probe_args;
  CLI::App* probe = app.add_subcommand(
      "probe", "build the one-factor-change probing suite");
  probe->add_option("--model", probe_args.model_path, "model file")
      ->required();
  probe->add_option("--test-depth", probe_args.test_depth,
                    "values sampled per parameter");
  probe->add_option("--seed", probe_args.seed, "PRNG seed");
  probe->add_option("--out", probe_args.out_path, "output suite file")
      ->required();
  probe->add_option("--advance-order", probe_args.advance_order,
                    "round-robin|exhaust-first");
  probe->add_option("--ranged-mode", probe_args.ranged_mode,
                    "ranged value expansion: regular|random");
  probe->add_option("--ranged-seed", probe_args.ranged_seed,
                    "seed for --ranged-mode random");

  WeightsArgs weights_args;
  CLI::App* weights = app.add_subcommand(
      "weights", "compute per-parameter impact weights from coverage");
  weights->add_option("--model", weights_args.model_path, "model file")
      ->required();
  weights->add_option("--suite", weights_args.suite_path, "probing suite")
      ->required();
  weights->add_option("--covdir", weights_args.covdir,
                      "directory of <case_id>.cov files (or CCTG_COVDIR)");
  weights->add_option("--format", weights_args.format,
                      "coverage file format: lines|gcov");
  weights->add_option("--metric", weights_args.metric,
                      "spread metric: scalar|symdiff");
  weights->add_option("--out", weights_args.out_path, "output weights JSON")
      ->required();

  GenerateArgs generate_args;
  CLI::App* generate =
      app.add_subcommand("generate", "generate a weighted test suite");
  generate->add_option("--model", generate_args.model_path, "model file")
      ->required();
  generate->add_option("--method", generate_args.method,
                       "cctg|random|unweighted");
  generate->add_option("--weights", generate_args.weights_path,
                       "weights JSON (required for cctg)");
  generate->add_option("-n,--n-cases", generate_args.n_cases,
                       "cases to generate");
  generate->add_option("--seed", generate_args.seed, "PRNG seed");
  generate->add_option("--max-retries", generate_args.max_retries,
                       "consecutive failures before early stop");
  generate->add_option("--min-cases", generate_args.min_cases,
                       "exit 1 when fewer cases come out");
  generate->add_option("--out", generate_args.out_path, "output suite file")
      ->required();

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "execute a suite against the SUT (optionally collecting "
             "coverage)");
  run->add_option("--model", run_args.model_path, "model file")->required();
  run->add_option("--suite", run_args.suite_path, "suite file")->required();
  run->add_option("--out", run_args.out_path,
                  "execution results CSV (stdout when omitted)");
  run->add_option("--cov-hook", run_args.cov_hook,
                  "coverage hook template; placeholders {case_id} {covdir} "
                  "{argv}");
  run->add_option("--covdir", run_args.covdir,
                  "coverage output directory (or CCTG_COVDIR)");
  run->add_option("--format", run_args.format,
                  "coverage file format: lines|gcov");
  run->add_option("--timeout-ms", run_args.timeout_ms, "per-case timeout");
  run->add_option("--parallelism", run_args.parallelism,
                  "concurrent executions");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "differential mutation evaluation of one suite");
  evaluate->add_option("--model", evaluate_args.model_path, "model file")
      ->required();
  evaluate->add_option("--suite", evaluate_args.suite_path, "suite file")
      ->required();
  evaluate->add_option("--mutants", evaluate_args.mutants_path,
                       "mutants JSON file")
      ->required();
  evaluate->add_option("--out", evaluate_args.out_path,
                       "summary CSV (stdout when omitted)");
  evaluate->add_option("--detail-out", evaluate_args.detail_path,
                       "per-fault detail CSV");
  evaluate->add_option("--timeout-ms", evaluate_args.timeout_ms,
                       "per-case timeout");
  evaluate->add_option("--parallelism", evaluate_args.parallelism,
                       "concurrent executions");
  evaluate->add_flag("--oracle-stderr", evaluate_args.oracle_stderr,
                     "include stderr in the fault oracle");

  ExperimentArgs experiment_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment",
      "repeated generate+evaluate comparison across methods");
  experiment->add_option("--model", experiment_args.model_path, "model file")
      ->required();
  experiment->add_option("--mutants", experiment_args.mutants_path,
                         "mutants JSON file")
      ->required();
  experiment->add_option("--weights", experiment_args.weights_path,
                         "weights JSON (required when methods include cctg)");
  experiment->add_option("--methods", experiment_args.methods,
                         "comma list of cctg|random|unweighted");
  experiment->add_option("--n-cases", experiment_args.n_cases,
                         "cases per generated suite");
  experiment->add_option("--repetitions", experiment_args.repetitions,
                         "fresh suites per method");
  experiment->add_option("--seed", experiment_args.seed, "base PRNG seed");
  experiment->add_option("--max-retries", experiment_args.max_retries,
                         "generation retry bound");
  experiment->add_option("--out", experiment_args.out_path,
                         "summary CSV (stdout when omitted)");
  experiment->add_option("--detail-out", experiment_args.detail_path,
                         "per-fault detail CSV");
  experiment->add_option("--meta-out", experiment_args.meta_path,
                         "experiment metadata JSON");
  experiment->add_option("--suite-dir", experiment_args.suite_dir,
                         "directory to record every generated suite");
  experiment->add_option("--timeout-ms", experiment_args.timeout_ms,
                         "per-case timeout");
  experiment->add_option("--parallelism", experiment_args.parallelism,
                         "concurrent executions");
  experiment->add_flag("--oracle-stderr", experiment_args.oracle_stderr,
                       "include stderr in the fault oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (probe->parsed()) return CmdProbe(probe_args);
    if (weights->parsed()) return CmdWeights(weights_args);
    if (generate->parsed()) return CmdGenerate(generate_args);
    if (run->parsed()) return CmdRun(run_args);
    if (evaluate->parsed()) return CmdEvaluate(evaluate_args);
    if (experiment->parsed()) return CmdExperiment(experiment_args);
  } catch (const cctg::UnsatisfiableError& e) {
    std::fprintf(stderr, "cctg: error: %s\n", e.what());
    return kExitDomain;
  } catch (const cctg::ResourceLimitError& e) {
    std::fprintf(stderr, "cctg: error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cctg: error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
