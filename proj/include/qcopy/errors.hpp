// Copyright 2026 The qcopy Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcopy {

/// Base class for every error raised by the library. The CLI maps subclasses
/// onto exit codes, so new error kinds should derive from the closest one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A diagnostic tied to a position in DSL source text.
class SourceError : public Error {
 public:
  SourceError(const std::string& kind, const std::string& message, std::size_t line, std::size_t column)
      : Error(kind + " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

class SyntaxError : public SourceError {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : SourceError("syntax error", message, line, column) {}
};

class SemanticError : public SourceError {
 public:
  SemanticError(const std::string& message, std::size_t line, std::size_t column)
      : SourceError("semantic error", message, line, column) {}
};

class UnsupportedTopology : public Error {
 public:
  using Error::Error;
};

class UnknownCarrier : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class BadDistribution : public Error {
 public:
  using Error::Error;
};

/// Malformed schedule text, device config or sweep CSV.
class FormatError : public Error {
 public:
  using Error::Error;
};

class MalformedCsv : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace qcopy
