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

#ifndef CCTG_ERROR_H_
#define CCTG_ERROR_H_

#include <stdexcept>
#include <string>

namespace cctg {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (model file, constraint expression, coverage report).
// `line` and `column` are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(Format(message, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(const std::string& message, int line, int column) {
    if (line == 0 && column == 0) return message;
    return message + " (line " + std::to_string(line) + ", column " +
           std::to_string(column) + ")";
  }

  int line_;
  int column_;
};

// Structurally valid input that violates a model rule (duplicate parameter,
// out-of-bounds index, unknown name, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The model's constraint set admits no test case.
class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

// A bounded search exceeded its configured node budget.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Subprocess or filesystem failure while driving the system under test.
class ExecError : public Error {
 public:
  using Error::Error;
};

}  // namespace cctg

#endif  // CCTG_ERROR_H_
