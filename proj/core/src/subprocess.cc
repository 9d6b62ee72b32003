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

#include "cctg/subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

extern char** environ;

namespace cctg {

namespace {

struct Pipe {
  int read_fd = -1;
  int write_fd = -1;

  bool Open() {
    int fds[2];
    if (pipe(fds) != 0) return false;
    read_fd = fds[0];
    write_fd = fds[1];
    return true;
  }
  void CloseRead() {
    if (read_fd >= 0) { close(read_fd); read_fd = -1; }
  }
  void CloseWrite() {
    if (write_fd >= 0) { close(write_fd); write_fd = -1; }
  }
  ~Pipe() {
    CloseRead();
    CloseWrite();
  }
};

// Drains the stdout/stderr pipes until EOF on both, killing the child at
// the deadline. Returns whether the deadline fired.
bool DrainPipes(pid_t pid, int out_fd, int err_fd, std::int64_t timeout_ms,
                std::string& out, std::string& err) {
  using Clock = std::chrono::steady_clock;
  auto deadline = Clock::now() + std::chrono::milliseconds(
                                     timeout_ms > 0 ? timeout_ms : 0);
  bool killed = false;
  bool out_open = true, err_open = true;
  char buffer[65536];
  while (out_open || err_open) {
    struct pollfd fds[2];
    nfds_t count = 0;
    if (out_open) fds[count++] = {out_fd, POLLIN, 0};
    if (err_open) fds[count++] = {err_fd, POLLIN, 0};

    int wait_ms = -1;
    if (timeout_ms > 0 && !killed) {
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                           deadline - Clock::now())
                           .count();
      wait_ms = remaining > 0 ? static_cast<int>(remaining) : 0;
    }
    int ready = poll(fds, count, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) {
      // Deadline: kill and keep draining until EOF.
      kill(pid, SIGKILL);
      killed = true;
      continue;
    }
    for (nfds_t i = 0; i < count; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t n = read(fds[i].fd, buffer, sizeof(buffer));
      if (n > 0) {
        (fds[i].fd == out_fd ? out : err).append(buffer, n);
      } else if (n == 0 || (n < 0 && errno != EINTR)) {
        if (fds[i].fd == out_fd) out_open = false;
        else err_open = false;
      }
    }
  }
  return killed;
}

}  // namespace

std::string ShellQuote(const std::string& token) {
  std::string out = "'";
  for (char c : token) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

std::optional<std::string> ResolveExecutable(const std::string& command,
                                             const std::string& workdir) {
  namespace fs = std::filesystem;
  auto executable = [](const fs::path& p) {
    std::error_code ec;
    return fs::is_regular_file(p, ec) &&
           access(p.c_str(), X_OK) == 0;
  };
  if (command.find('/') != std::string::npos) {
    fs::path path(command);
    if (path.is_relative() && !workdir.empty()) {
      path = fs::path(workdir) / path;
    }
    if (executable(path)) return path.string();
    return std::nullopt;
  }
  const char* path_env = std::getenv("PATH");
  if (path_env == nullptr) return std::nullopt;
  std::string paths(path_env);
  std::size_t start = 0;
  while (start <= paths.size()) {
    std::size_t end = paths.find(':', start);
    if (end == std::string::npos) end = paths.size();
    std::string dir = paths.substr(start, end - start);
    if (!dir.empty()) {
      fs::path candidate = fs::path(dir) / command;
      if (executable(candidate)) return candidate.string();
    }
    start = end + 1;
  }
  return std::nullopt;
}

CommandResult RunCommand(const std::vector<std::string>& argv,
                         const std::string& workdir,
                         const std::map<std::string, std::string>& env,
                         std::int64_t timeout_ms) {
  CommandResult result;
  if (argv.empty()) {
    result.spawn_failed = true;
    result.exit_code = 127;
    result.error = "empty argv";
    return result;
  }

  Pipe out_pipe, err_pipe, status_pipe;
  if (!out_pipe.Open() || !err_pipe.Open() || !status_pipe.Open()) {
    result.spawn_failed = true;
    result.exit_code = 127;
    result.error = std::string("pipe: ") + std::strerror(errno);
    return result;
  }
  fcntl(status_pipe.write_fd, F_SETFD, FD_CLOEXEC);

  // Child environment: inherited entries not overridden, plus overrides.
  std::vector<std::string> env_storage;
  for (char** e = environ; *e != nullptr; ++e) {
    std::string entry(*e);
    std::size_t eq = entry.find('=');
    if (eq != std::string::npos && env.count(entry.substr(0, eq))) continue;
    env_storage.push_back(std::move(entry));
  }
  for (const auto& [key, value] : env) {
    env_storage.push_back(key + "=" + value);
  }
  std::vector<char*> envp;
  envp.reserve(env_storage.size() + 1);
  for (std::string& entry : env_storage) envp.push_back(entry.data());
  envp.push_back(nullptr);

  std::vector<char*> args;
  args.reserve(argv.size() + 1);
  for (const std::string& a : argv) {
    args.push_back(const_cast<char*>(a.c_str()));
  }
  args.push_back(nullptr);

  auto start_time = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    result.spawn_failed = true;
    result.exit_code = 127;
    result.error = std::string("fork: ") + std::strerror(errno);
    return result;
  }
  if (pid == 0) {
    // Child: only async-signal-safe calls from here to exec.
    if (!workdir.empty() && chdir(workdir.c_str()) != 0) {
      int saved = errno;
      (void)!write(status_pipe.write_fd, &saved, sizeof(saved));
      _exit(127);
    }
    dup2(out_pipe.write_fd, STDOUT_FILENO);
    dup2(err_pipe.write_fd, STDERR_FILENO);
    out_pipe.CloseRead(); out_pipe.CloseWrite();
    err_pipe.CloseRead(); err_pipe.CloseWrite();
    status_pipe.CloseRead();
    execvpe(args[0], args.data(), envp.data());
    int saved = errno;
    (void)!write(status_pipe.write_fd, &saved, sizeof(saved));
    _exit(127);
  }

  out_pipe.CloseWrite();
  err_pipe.CloseWrite();
  status_pipe.CloseWrite();

  result.timed_out = DrainPipes(pid, out_pipe.read_fd, err_pipe.read_fd,
                                timeout_ms, result.stdout_bytes,
                                result.stderr_bytes);

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_time)
                           .count();

  int exec_errno = 0;
  ssize_t n = read(status_pipe.read_fd, &exec_errno, sizeof(exec_errno));
  if (n == sizeof(exec_errno)) {
    result.spawn_failed = true;
    result.exit_code = 127;
    result.error = std::string(argv[0]) + ": " + std::strerror(exec_errno);
    return result;
  }

  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.signaled = true;
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

}  // namespace cctg
