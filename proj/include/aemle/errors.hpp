// Copyright 2026 The aemle Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace aemle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (schedule parameters, hardware assumptions, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Fisher information requested at a ∈ {0, 1} where sin(2θ_a) = 0.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// A Fisher summand denominator vanished (κ = 0 exactly on a sine zero).
class DegenerateTermError : public Error {
 public:
  using Error::Error;
};

/// Schedule carries no information about κ (all depths zero).
class DegenerateScheduleError : public Error {
 public:
  using Error::Error;
};

/// Data cannot identify the amplitude (only saturated m = 0 stages).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// A requested accuracy cannot be reached within the search range.
class NotAchievableError : public Error {
 public:
  using Error::Error;
};

/// Malformed integrand specification.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON / CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace aemle
