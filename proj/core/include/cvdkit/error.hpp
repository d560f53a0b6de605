// Copyright 2026 The cvdkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVDKIT_ERROR_HPP_
#define CVDKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cvd {

// Base of every error thrown by cvdkit. Each subclass corresponds to one
// failure category; callers (the CLI and the HTTP service) map categories to
// exit codes and status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument outside the documented domain of a conversion.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid generation or configuration parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A randomized search exhausted its budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed user-supplied data (answers, palettes, missing responses).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A response addressed to a plate other than the current one.
class SequencingError : public Error {
 public:
  using Error::Error;
};

// An operation not permitted in the session's current state.
class StateError : public Error {
 public:
  using Error::Error;
};

// A JSON document that does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Two documents that are individually valid but do not belong together,
// e.g. responses recorded against a different battery.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvd

#endif  // CVDKIT_ERROR_HPP_
