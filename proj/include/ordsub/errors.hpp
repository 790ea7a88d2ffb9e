// Copyright 2026 The ordsub Authors.
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

#ifndef ORDSUB_ERRORS_HPP_
#define ORDSUB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ordsub {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments or instance data (bad index, dimension mismatch,
/// violated precondition).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The objective produced a value it cannot be used with (non-finite, or an
/// unbounded divergence term).
class ObjectiveError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured evaluation budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An overlap specification is inconsistent with the data, e.g. a user
/// supplied d_star below the observed divergence.
class SpecificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ordsub

#endif  // ORDSUB_ERRORS_HPP_
