// Copyright 2026 The modcert Authors
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

#ifndef MODCERT_ERRORS_HPP_
#define MODCERT_ERRORS_HPP_

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace modcert {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An input violated a type invariant or precondition (bad counts, delta out
/// of range, length mismatch, malformed file, ...).
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A statistical hypothesis the result would rest on could not be certified.
/// Distinct from ValidationError: the inputs are well formed, but emitting a
/// bound would be unsound. Carries the offending quantity.
class AssumptionViolationError : public Error {
public:
  AssumptionViolationError(const std::string& what, double offending_sum)
      : Error(what), offending_sum_(offending_sum) {}

  double offending_sum() const { return offending_sum_; }

private:
  double offending_sum_;
};

/// A search or experiment would exceed its configured resource cap.
class CapacityError : public Error {
public:
  explicit CapacityError(const std::string& what) : Error(what) {}
  CapacityError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  /// Best value achieved at the cap, when meaningful (NaN otherwise).
  double achieved() const { return achieved_; }

private:
  double achieved_ = std::numeric_limits<double>::quiet_NaN();
};

/// Malformed input data; carries the 1-based line number when known.
class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

}  // namespace modcert

#endif  // MODCERT_ERRORS_HPP_
