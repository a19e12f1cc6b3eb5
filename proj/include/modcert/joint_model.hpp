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

#ifndef MODCERT_JOINT_MODEL_HPP_
#define MODCERT_JOINT_MODEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "modcert/errors.hpp"

namespace modcert {

/**
 * Exact joint probability table over the 2^T outcomes of T binary failure
 * indicators. This is the ground truth that simulation experiments verify
 * the closed-form bounds against, so it is stored explicitly and summed
 * exhaustively instead of through any factored shortcut.
 *
 * Outcome encoding: indicator t (0-based) is bit t of the table index, so
 * index 0 is "no indicator fired" and index 2^T - 1 is the full conjunction.
 *
 * T is capped at 20 to keep exhaustive enumeration at desk scale.
 */
class JointIndicatorModel {
public:
  static constexpr int kMaxIndicators = 20;
  static constexpr double kMassTolerance = 1e-12;

  JointIndicatorModel(int indicator_count, std::vector<double> probabilities);

  int indicator_count() const { return indicator_count_; }
  std::uint32_t outcome_count() const { return static_cast<std::uint32_t>(probabilities_.size()); }
  double probability(std::uint32_t outcome) const { return probabilities_[outcome]; }
  const std::vector<double>& probabilities() const { return probabilities_; }

private:
  int indicator_count_;
  std::vector<double> probabilities_;
};

/**
 * Exhaustive summaries of a joint model: per-indicator marginals
 * P[z_t = 1], the conjunction probability P[z_1 = ... = z_T = 1], and the
 * exact approximate-independence factors
 *
 *   c_t = P[z_t = 1 | z_1 = 1, ..., z_{t-1} = 1] / P[z_t = 1]
 *
 * in the model's indicator order (the factors are order-dependent; the
 * order is taken as given). c_1 = 1 by convention (empty prefix). When a
 * prefix event or a marginal has probability zero the conditional is
 * undefined; the factor is reported as 1 with a degenerate flag, which keeps
 * every product bound valid (the conjunction probability is 0 then).
 */
struct ExactStatistics {
  std::vector<double> marginals;
  double conjunction_prob = 0.0;
  std::vector<double> independence_factors;
  std::vector<bool> degenerate;

  bool any_degenerate() const {
    for (bool flag : degenerate) {
      if (flag) return true;
    }
    return false;
  }
};

/// Product law with independent indicators: the canonical c = 1 oracle.
JointIndicatorModel model_independent(std::span<const double> marginals);

/**
 * Two-regime mixture producing positively correlated failures: with
 * probability q every indicator is an independent Bernoulli(fault_rates[t]),
 * otherwise an independent Bernoulli(base_rates[t]). With fault rates above
 * base rates this yields factors c_t > 1, the regime approximate
 * independence is meant to absorb.
 */
JointIndicatorModel model_common_cause(double q, std::span<const double> base_rates,
                                       std::span<const double> fault_rates);

/// Exhaustive marginals, conjunction probability and exact factors.
ExactStatistics exact_statistics(const JointIndicatorModel& model);

}  // namespace modcert

#endif  // MODCERT_JOINT_MODEL_HPP_
