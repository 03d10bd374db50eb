// Copyright 2026 The egoscene Authors
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

#ifndef EGOSCENE_ERRORS_H_
#define EGOSCENE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace egoscene {

// Base class of every error raised by the library. Callers that only care
// about "something in egoscene failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Near-zero volume boxes, parallel 6D columns and similar inputs for which
// the requested quantity is undefined.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class PlacementFailure : public Error {
 public:
  using Error::Error;
};

// A function evaluated during a numeric check returned NaN or infinity.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Raised by the file readers. `line` is 1-based; 0 means the error is not
// tied to a text line (e.g. a truncated binary payload).
class ParseError : public Error {
 public:
  ParseError(std::string path, std::size_t line, std::string field,
             const std::string& message)
      : Error(Format(path, line, field, message)),
        path_(std::move(path)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string Format(const std::string& path, std::size_t line,
                            const std::string& field,
                            const std::string& message) {
    std::string out = path;
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += ": field '" + field + "'";
    out += ": " + message;
    return out;
  }

  std::string path_;
  std::size_t line_;
  std::string field_;
};

}  // namespace egoscene

#endif  // EGOSCENE_ERRORS_H_
