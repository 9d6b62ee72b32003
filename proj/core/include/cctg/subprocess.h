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

#ifndef CCTG_SUBPROCESS_H_
#define CCTG_SUBPROCESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cctg {

struct CommandResult {
  int exit_code = 0;           // 128 + signal for signaled processes
  bool signaled = false;
  bool timed_out = false;      // killed at the deadline
  bool spawn_failed = false;   // fork/exec never produced the program
  std::string stdout_bytes;
  std::string stderr_bytes;
  std::int64_t duration_ms = 0;
  std::string error;           // spawn failure detail
};

// Runs `argv` with stdout/stderr fully captured. `workdir` is entered
// before exec when non-empty; `env` entries are layered over the inherited
// environment. A process still running after `timeout_ms` is killed
// (SIGKILL) and reported with timed_out set. timeout_ms <= 0 disables the
// deadline.
CommandResult RunCommand(const std::vector<std::string>& argv,
                         const std::string& workdir,
                         const std::map<std::string, std::string>& env,
                         std::int64_t timeout_ms);

// Resolves `command` the way exec will: relative to `workdir` when it
// contains a slash, otherwise via PATH. Returns the resolved path, or
// nullopt when no executable is found.
std::optional<std::string> ResolveExecutable(const std::string& command,
                                             const std::string& workdir);

// Single-token shell quoting (POSIX single quotes).
std::string ShellQuote(const std::string& token);

}  // namespace cctg

#endif  // CCTG_SUBPROCESS_H_
