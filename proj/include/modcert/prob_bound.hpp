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

#ifndef MODCERT_PROB_BOUND_HPP_
#define MODCERT_PROB_BOUND_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modcert/errors.hpp"

namespace modcert {

/**
 * A probability upper bound carried in both linear and natural-log form.
 *
 * Certified bounds in this library routinely reach the 1e-18 scale and
 * products of many of them can leave the range of double entirely, so the
 * log form is the one that is always meaningful: `log_value() <= 0`, with
 * -inf reserved for an exactly-zero bound. `value()` is the linear
 * materialization, clipped to [0, 1]; it satisfies
 * `exp(log_value()) == value()` to within 1e-12 relative whenever it is
 * positive, and collapses to 0 only when the bound is below the smallest
 * positive double (the log form still carries the magnitude then).
 */
class ProbBound {
public:
  /// Bound from a linear probability in [0, 1].
  static ProbBound from_value(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError("probability bound must lie in [0, 1], got " +
                            std::to_string(value));
    }
    return ProbBound(value, std::log(value));
  }

  /// Bound from a natural-log probability, log_value <= 0 (-inf allowed).
  static ProbBound from_log(double log_value) {
    if (std::isnan(log_value) || log_value > 0.0) {
      throw ValidationError("log probability bound must be <= 0, got " +
                            std::to_string(log_value));
    }
    return ProbBound(std::exp(log_value), log_value);
  }

  /**
   * Bound from a product accumulated along both routes: `linear` is the
   * running linear product, `log_sum` the matching sum of natural logs.
   * The linear route is authoritative for `value()` while it stays a normal
   * double; once it underflows, the value is rematerialized from the log sum.
   * Both are clipped to probability 1 at this boundary.
   */
  static ProbBound from_product(double linear, double log_sum) {
    if (std::isnan(linear) || std::isnan(log_sum)) {
      throw ValidationError("probability product is NaN");
    }
    if (linear < std::numeric_limits<double>::min()) {
      linear = std::exp(log_sum);
    }
    return ProbBound(std::min(1.0, linear), std::min(0.0, log_sum));
  }

  /// Rebuild a bound from serialized (value, log_value) parts, enforcing the
  /// class invariant so corrupted or hand-edited reports are rejected.
  static ProbBound from_parts(double value, double log_value) {
    if (!(value >= 0.0 && value <= 1.0) || std::isnan(log_value) || log_value > 0.0) {
      throw ValidationError("inconsistent probability bound parts");
    }
    const double expected = std::exp(log_value);
    const bool consistent =
        value > 0.0 ? std::abs(expected - value) <= 1e-9 * value : expected == 0.0;
    if (!consistent) {
      throw ValidationError("probability bound parts disagree: exp(" +
                            std::to_string(log_value) + ") vs " + std::to_string(value));
    }
    return ProbBound(value, log_value);
  }

  static ProbBound zero() { return ProbBound(0.0, -std::numeric_limits<double>::infinity()); }
  static ProbBound one() { return ProbBound(1.0, 0.0); }

  double value() const { return value_; }
  double log_value() const { return log_value_; }

  /// True for an exact zero (distinguished -inf log representation).
  bool is_zero() const { return std::isinf(log_value_); }

  friend bool operator==(const ProbBound&, const ProbBound&) = default;

private:
  ProbBound(double value, double log_value) : value_(value), log_value_(log_value) {}

  double value_;
  double log_value_;
};

}  // namespace modcert

#endif  // MODCERT_PROB_BOUND_HPP_
