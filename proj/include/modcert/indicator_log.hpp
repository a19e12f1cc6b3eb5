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

#ifndef MODCERT_INDICATOR_LOG_HPP_
#define MODCERT_INDICATOR_LOG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "modcert/bounds.hpp"
#include "modcert/errors.hpp"

namespace modcert {

/**
 * A log of m observed examples over T named failure indicators, one bit per
 * indicator per example. Row-major storage; immutable after construction.
 */
class IndicatorLog {
public:
  /// `bits` is row-major, row_count x indicator_count, every entry 0 or 1.
  IndicatorLog(std::vector<std::string> indicator_names, std::vector<std::uint8_t> bits)
      : names_(std::move(indicator_names)), bits_(std::move(bits)) {
    if (names_.empty()) {
      throw ValidationError("indicator log needs at least one indicator");
    }
    if (bits_.empty() || bits_.size() % names_.size() != 0) {
      throw ValidationError("indicator log rows must be nonempty and of width " +
                            std::to_string(names_.size()));
    }
    for (std::uint8_t b : bits_) {
      if (b > 1) {
        throw ValidationError("indicator log entries must be 0 or 1");
      }
    }
  }

  std::size_t indicator_count() const { return names_.size(); }
  std::int64_t row_count() const {
    return static_cast<std::int64_t>(bits_.size() / names_.size());
  }
  const std::vector<std::string>& indicator_names() const { return names_; }

  int bit(std::int64_t row, std::size_t indicator) const {
    return bits_[static_cast<std::size_t>(row) * names_.size() + indicator];
  }

  /// Per-indicator failure counts k_t.
  std::vector<std::int64_t> failure_counts() const {
    std::vector<std::int64_t> counts(names_.size(), 0);
    const std::size_t width = names_.size();
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      counts[i % width] += bits_[i];
    }
    return counts;
  }

  /// One TrialSummary per indicator, all over the same m rows.
  std::vector<TrialSummary> summaries() const {
    std::vector<TrialSummary> out;
    out.reserve(names_.size());
    for (std::int64_t k : failure_counts()) {
      out.emplace_back(k, row_count());
    }
    return out;
  }

  friend bool operator==(const IndicatorLog&, const IndicatorLog&) = default;

private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace modcert

#endif  // MODCERT_INDICATOR_LOG_HPP_
