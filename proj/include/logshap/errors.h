/*
 * Copyright 2026 The logshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LOGSHAP_ERRORS_H_
#define LOGSHAP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace logshap {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: model files, samples, instances, flags.
// The CLI maps this family to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A point or value lies outside its feature domain.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Well-formed input on which a computation cannot proceed. Exit code 3.
class ComputationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Expected values are undefined for categorical outputs.
class NumericRequired : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class PreconditionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class SizeError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace logshap

#endif  // LOGSHAP_ERRORS_H_
