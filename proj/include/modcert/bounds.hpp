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

#ifndef MODCERT_BOUNDS_HPP_
#define MODCERT_BOUNDS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "modcert/errors.hpp"
#include "modcert/prob_bound.hpp"

namespace modcert {

/**
 * Failure count k out of m Bernoulli trials for one binary failure
 * indicator. The unknown trial bias p is what the bounds below certify.
 */
class TrialSummary {
public:
  TrialSummary(std::int64_t failures, std::int64_t trials)
      : failures_(failures), trials_(trials) {
    if (trials < 1) {
      throw ValidationError("trial count must be >= 1, got " + std::to_string(trials));
    }
    if (failures < 0 || failures > trials) {
      throw ValidationError("failure count must lie in [0, trials], got " +
                            std::to_string(failures) + " of " + std::to_string(trials));
    }
  }

  std::int64_t failures() const { return failures_; }
  std::int64_t trials() const { return trials_; }

  double empirical_rate() const {
    return static_cast<double>(failures_) / static_cast<double>(trials_);
  }

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;

private:
  std::int64_t failures_;
  std::int64_t trials_;
};

/// Allowed failure probability delta of a high-confidence claim, in (0, 1].
class ConfidenceLevel {
public:
  explicit ConfidenceLevel(double delta) : delta_(delta) {
    if (!(delta > 0.0 && delta <= 1.0)) {
      throw ValidationError("delta must lie in (0, 1], got " + std::to_string(delta));
    }
  }

  double delta() const { return delta_; }

private:
  double delta_;
};

/**
 * Per-position approximate-independence factors c_t >= 0 for a conjunction
 * of failure indicators: c_t bounds P[z_t=1 | z_1=1,...,z_{t-1}=1] relative
 * to P[z_t=1]. c_t = 1 is non-positive dependence; slightly above 1
 * tolerates mild positive correlation. Factors are assumptions supplied by
 * the caller, never estimated here.
 */
class IndependenceFactors {
public:
  explicit IndependenceFactors(std::vector<double> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
      throw ValidationError("independence factors must be nonempty");
    }
    for (double c : factors_) {
      if (!(c >= 0.0)) {
        throw ValidationError("independence factor must be >= 0, got " + std::to_string(c));
      }
    }
  }

  /// T copies of a uniform factor c.
  static IndependenceFactors uniform(std::size_t count, double c) {
    return IndependenceFactors(std::vector<double>(count, c));
  }

  std::size_t size() const { return factors_.size(); }
  double operator[](std::size_t t) const { return factors_[t]; }
  const std::vector<double>& values() const { return factors_; }

private:
  std::vector<double> factors_;
};

/**
 * Inputs to the system-level decomposition: one certified failure bound per
 * sub-module plus a residual bound on the system failing although every
 * sub-module behaved. The residual is an assumption; it defaults to zero and
 * reports must flag that default.
 */
struct ModuleBoundSet {
  std::vector<ProbBound> module_bounds;
  ProbBound residual = ProbBound::zero();
};

/**
 * One-sided empirical Bernstein upper bound on a Bernoulli bias:
 * with probability at least 1 - delta over the m trials,
 *
 *   p <= p_hat + sqrt(2 p_hat ln(1/delta) / m) + 4 ln(1/delta) / m,
 *
 * clipped to 1. With zero observed failures this reduces to
 * 4 ln(1/delta) / m, which is how rare events are certified far below the
 * 1/m resolution of the empirical rate. The result never falls below the
 * empirical rate. Natural logarithms throughout.
 */
ProbBound bernstein_upper_bound(const TrialSummary& summary, const ConfidenceLevel& confidence);

/**
 * Upper bound on the conjunction probability of T failure indicators from
 * their per-indicator trial summaries, under the given approximate
 * independence factors. The confidence budget delta is split evenly as
 * delta/T across indicators (union bound), so each per-indicator bracket is
 * the Bernstein bound at ln(T/delta). Brackets are clipped to 1 before the
 * factor scaling, and the product is accumulated in log space.
 *
 * Per-indicator sample sizes may differ; each indicator's bracket holds with
 * its own delta/T regardless of how the samples are coupled.
 *
 * With T = 1 and c_1 = 1 this is identical, bit for bit, to
 * bernstein_upper_bound on the same summary.
 */
ProbBound composition_bound(std::span<const TrialSummary> summaries,
                            const IndependenceFactors& factors,
                            const ConfidenceLevel& confidence);

/**
 * Analytic form of the conjunction bound: min(1, prod_t c_t p_t) for known
 * (or assumed) marginal failure probabilities p_t, computed in log space.
 * This is the bound used when marginals are supplied directly as assumptions
 * rather than estimated from trials.
 */
ProbBound conjunction_bound_analytic(std::span<const double> marginals,
                                     const IndependenceFactors& factors);

/**
 * System-level failure bound from per-sub-module bounds and the residual:
 * min(1, 2 * sum_j module_bounds[j] + residual). The doubling compensates
 * for conditioning on all sub-modules behaving; the residual term is not
 * doubled.
 *
 * The decomposition is only valid when the sub-modules jointly behave with
 * probability at least 1/2. That hypothesis is certified via the union
 * bound: the sum of the module bounds must be <= 0.5, otherwise an
 * AssumptionViolationError carrying the offending sum is raised and no bound
 * is emitted.
 */
ProbBound system_bound(const ModuleBoundSet& bounds);

namespace detail {

/// Shared Bernstein bracket: p_hat + sqrt(2 p_hat L / m) + 4 L / m with
/// L = ln(1/delta_effective). Both bound operations must evaluate this with
/// the same code path so the T=1 reduction is bit-exact.
inline double bernstein_bracket(double empirical_rate, double trials, double log_confidence) {
  return empirical_rate + std::sqrt(2.0 * empirical_rate * log_confidence / trials) +
         4.0 * log_confidence / trials;
}

}  // namespace detail

}  // namespace modcert

#endif  // MODCERT_BOUNDS_HPP_
