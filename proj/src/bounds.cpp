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

#include "modcert/bounds.hpp"

#include <cmath>
#include <string>

namespace modcert {

ProbBound bernstein_upper_bound(const TrialSummary& summary, const ConfidenceLevel& confidence) {
  const double log_confidence = std::log(1.0 / confidence.delta());
  const double bracket = detail::bernstein_bracket(
      summary.empirical_rate(), static_cast<double>(summary.trials()), log_confidence);
  return ProbBound::from_value(std::min(1.0, bracket));
}

ProbBound composition_bound(std::span<const TrialSummary> summaries,
                            const IndependenceFactors& factors,
                            const ConfidenceLevel& confidence) {
  if (summaries.empty()) {
    throw ValidationError("composition_bound requires at least one summary");
  }
  if (summaries.size() != factors.size()) {
    throw ValidationError("summary/factor length mismatch: " + std::to_string(summaries.size()) +
                          " vs " + std::to_string(factors.size()));
  }
  // Even delta/T split across indicators; each bracket holds with its share.
  const double log_confidence =
      std::log(static_cast<double>(summaries.size()) / confidence.delta());

  double linear = 1.0;
  double log_sum = 0.0;
  for (std::size_t t = 0; t < summaries.size(); ++t) {
    const double bracket = std::min(
        1.0, detail::bernstein_bracket(summaries[t].empirical_rate(),
                                       static_cast<double>(summaries[t].trials()),
                                       log_confidence));
    linear *= factors[t] * bracket;
    log_sum += std::log(factors[t]) + std::log(bracket);
  }
  return ProbBound::from_product(linear, log_sum);
}

ProbBound conjunction_bound_analytic(std::span<const double> marginals,
                                     const IndependenceFactors& factors) {
  if (marginals.empty()) {
    throw ValidationError("conjunction_bound_analytic requires at least one marginal");
  }
  if (marginals.size() != factors.size()) {
    throw ValidationError("marginal/factor length mismatch: " + std::to_string(marginals.size()) +
                          " vs " + std::to_string(factors.size()));
  }
  double linear = 1.0;
  double log_sum = 0.0;
  for (std::size_t t = 0; t < marginals.size(); ++t) {
    if (!(marginals[t] >= 0.0 && marginals[t] <= 1.0)) {
      throw ValidationError("marginal probability must lie in [0, 1], got " +
                            std::to_string(marginals[t]));
    }
    linear *= factors[t] * marginals[t];
    log_sum += std::log(factors[t]) + std::log(marginals[t]);
  }
  return ProbBound::from_product(linear, log_sum);
}

ProbBound system_bound(const ModuleBoundSet& bounds) {
  double sum = 0.0;
  for (const ProbBound& b : bounds.module_bounds) {
    sum += b.value();
  }
  if (sum > 0.5) {
    throw AssumptionViolationError(
        "cannot certify that all sub-modules jointly behave with probability >= 1/2: "
        "module bound sum " + std::to_string(sum) + " exceeds 0.5",
        sum);
  }
  return ProbBound::from_value(std::min(1.0, 2.0 * sum + bounds.residual.value()));
}

}  // namespace modcert
