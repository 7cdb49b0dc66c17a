// Copyright 2026 The Authors.
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

#ifndef HRUSH_ERROR_H_
#define HRUSH_ERROR_H_

#include <stdexcept>
#include <string>

namespace hrush {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain-level failure: a precondition of a construction does not hold
// (structure not in the class, set not self-sufficient, no room for
// replacement tuples, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller handed in something malformed: a subset that is not contained in
// the universe, an unknown symbol, a tuple of the wrong length.
// A replacement was requested at a subset that is not self-sufficient.
class NotSelfSufficientError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation was asked to run over more points than the
// configured cap allows.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hrush

#endif  // HRUSH_ERROR_H_
