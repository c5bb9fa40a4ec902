// Copyright 2026 The twomode Authors.
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

#ifndef TWOMODE_ERRORS_HPP
#define TWOMODE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twomode {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physics or numerical validation failure (CLI exit code 2).
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class TruncationTooLarge : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Tail mass beyond the Fock cutoff exceeds the truncation tolerance.
class TruncationTooSmall : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Requested occupation does not fit under the Fock cutoff.
class ExceedsTruncation : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class BadFactor : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotHermitian : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotAState : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class DimensionMismatch : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class OutOfValidity : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class InsufficientHorizon : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Critical-parameter scan endpoints share a verdict.
class NoSwitch : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Malformed or invalid scenario configuration (CLI exit code 1).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace twomode

#endif  // TWOMODE_ERRORS_HPP
