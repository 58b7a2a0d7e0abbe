// Copyright 2026 The btbt-neuron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BTBT_ERROR_H_
#define BTBT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace btbt {

// Non-finite or out-of-domain argument to a simulation routine.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Step size too coarse for the requested accuracy.
class StepSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query outside a table's domain; no extrapolation is performed.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Energy per spike requested for a bias that never fires.
class NoSpikeCycleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Matrix or vector shapes disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. `line()` is 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : std::runtime_error(Format(source, line, what)), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& source, std::size_t line,
                            const std::string& what) {
    if (line == 0) return source + ": " + what;
    return source + ":" + std::to_string(line) + ": " + what;
  }

  std::size_t line_;
};

// Invalid run configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace btbt

#endif  // BTBT_ERROR_H_
