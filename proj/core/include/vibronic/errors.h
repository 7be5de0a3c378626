// Copyright 2026 The Vibronic Authors
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

#ifndef VIBRONIC_ERRORS_H_
#define VIBRONIC_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vibronic {

// Root of every error the library throws. The command-line tool maps the
// three families below onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files and bad configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

// Numerical failures (truncation did not converge).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Requests the physical model cannot represent.
class ModelError : public Error {
 public:
  using Error::Error;
};

class InvalidDimensionError : public ModelError {
 public:
  using ModelError::ModelError;
};

class IndexError : public ModelError {
 public:
  using ModelError::ModelError;
};

class InvalidParameterError : public ModelError {
 public:
  using ModelError::ModelError;
};

class UnsupportedReflectionError : public ModelError {
 public:
  using ModelError::ModelError;
};

class NotARotationError : public ModelError {
 public:
  using ModelError::ModelError;
};

class UnsupportedDimensionError : public ModelError {
 public:
  using ModelError::ModelError;
};

class DivisionError : public ModelError {
 public:
  using ModelError::ModelError;
};

class ConfigurationError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : InputError(what), line_(line), field_(std::move(field)) {}

  // 1-based; 0 when the problem is not tied to one line.
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class LeakageError : public NumericError {
 public:
  LeakageError(const std::string& what, double leakage)
      : NumericError(what), leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

}  // namespace vibronic

#endif  // VIBRONIC_ERRORS_H_
