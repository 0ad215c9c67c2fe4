// Copyright (c) 2026, the ordersynth authors.
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

#include <stdexcept>
#include <string>

namespace ordersynth {

/// Error taxonomy shared by the library and the CLI. Each class maps to a
/// stable process exit code (see exit_code()).
enum class ErrorKind {
  input,      // bad data values: length mismatches, out-of-bound controls
  format,     // unparsable or unsupported file contents
  parameter,  // invalid configuration or synthesis parameters
  io,         // filesystem failures
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::input: return 2;
      case ErrorKind::format: return 3;
      case ErrorKind::parameter: return 4;
      case ErrorKind::io: return 5;
    }
    return 1;
  }

  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::input: return "input";
      case ErrorKind::format: return "format";
      case ErrorKind::parameter: return "parameter";
      case ErrorKind::io: return "io";
    }
    return "unknown";
  }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& msg) : Error(ErrorKind::format, msg) {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& msg) : Error(ErrorKind::parameter, msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};

}  // namespace ordersynth
