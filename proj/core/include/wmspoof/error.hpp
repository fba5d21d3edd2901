// Copyright 2026 The wmspoof Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
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

namespace wmspoof {

// Root of every error raised by the library. The CLI maps any Error to exit
// status 1; usage problems are reported separately by the argument parser.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed container (truncated WAV header, broken chunk table).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Well-formed input in an encoding we deliberately do not handle.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Payload does not fit, or audio too short to hold the requested bits.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Content violates a domain invariant (duplicate ids, unknown labels,
// inconsistent plan counts).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A metric that has no value for the given input (EER with eer_0 == 0,
// segmental SNR over all-silent audio).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// Text-format parse failure; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wmspoof
