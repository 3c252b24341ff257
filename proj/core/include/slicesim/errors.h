/* Copyright 2026 The slicesim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SLICESIM_ERRORS_H_
#define SLICESIM_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slicesim {

// Base for all user-facing errors (bad input, bad config, bad data file).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Not enough profile samples, or the design matrix is rank deficient.
class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

// A fitted or loaded latency model predicts negative time inside the
// configured operating range.
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

// An analytic-only operation was called on a rule-table memory model.
class WrongKindError : public Error {
 public:
  using Error::Error;
};

// A request cannot be served even as a singleton batch.
class InfeasibleRequestError : public Error {
 public:
  InfeasibleRequestError(std::int64_t request_id, const std::string& msg)
      : Error(msg), request_id(request_id) {}
  std::int64_t request_id;
};

class NoWorkersError : public Error {
 public:
  using Error::Error;
};

// Malformed row in a CSV / config document. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg) : Error(msg), line(line) {}
  int line;
};

// A trace row whose lengths fall outside the configured limits.
class LimitViolationError : public Error {
 public:
  LimitViolationError(int line, const std::string& msg)
      : Error(msg), line(line) {}
  int line;
};

class EmptyLogError : public Error {
 public:
  using Error::Error;
};

// Simulated clock ran past the configured horizon.
class NonTerminationError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicesim

#endif  // SLICESIM_ERRORS_H_
