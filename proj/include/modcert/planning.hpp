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

#ifndef MODCERT_PLANNING_HPP_
#define MODCERT_PLANNING_HPP_

#include <cstdint>
#include <vector>

#include "modcert/bounds.hpp"
#include "modcert/errors.hpp"

namespace modcert {

/// Default hard cap on any planned sample size.
inline constexpr std::int64_t kDefaultSampleCap = 1'000'000'000;

/**
 * The end-to-end validation task: decide whether a system's failure rate is
 * <= epsilon or >= 2*epsilon, each side with error probability at most
 * delta. epsilon < 0.5 keeps the alternative 2*epsilon a probability; both
 * error budgets stay below 1/2.
 */
class ValidationTask {
public:
  ValidationTask(double epsilon, double delta) : epsilon_(epsilon), delta_(delta) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
      throw ValidationError("epsilon must lie in (0, 0.5), got " + std::to_string(epsilon));
    }
    if (!(delta > 0.0 && delta < 0.5)) {
      throw ValidationError("delta must lie in (0, 0.5), got " + std::to_string(delta));
    }
  }

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

private:
  double epsilon_;
  double delta_;
};

/**
 * A concrete validation plan: observe `samples_required` examples and
 * declare the system good iff at most `decision_threshold` failures occur.
 * `achieved_alpha` is the exact probability of declaring good at failure
 * rate 2*epsilon; `achieved_beta` the exact probability of declaring bad at
 * rate epsilon. Both are guaranteed <= delta.
 */
struct PlanResult {
  std::int64_t samples_required;
  std::int64_t decision_threshold;
  double achieved_alpha;
  double achieved_beta;
};

/**
 * A modular-certification planning scenario: reach `target_failure_prob`
 * for a conjunction of `module_count` indicators with a uniform
 * approximate-independence factor and confidence delta, assuming the given
 * observed failure rates per indicator (all zero when omitted).
 */
class GapScenario {
public:
  GapScenario(double target_failure_prob, std::int64_t module_count, double uniform_factor,
              double delta, std::vector<double> assumed_observed_rates = {})
      : target_(target_failure_prob),
        module_count_(module_count),
        factor_(uniform_factor),
        delta_(delta),
        rates_(std::move(assumed_observed_rates)) {
    if (!(target_ > 0.0 && target_ < 1.0)) {
      throw ValidationError("target failure probability must lie in (0, 1), got " +
                            std::to_string(target_));
    }
    if (module_count_ < 1) {
      throw ValidationError("module count must be >= 1, got " + std::to_string(module_count_));
    }
    if (!(factor_ >= 1.0)) {
      throw ValidationError("uniform factor must be >= 1, got " + std::to_string(factor_));
    }
    if (!(delta_ > 0.0 && delta_ < 1.0)) {
      throw ValidationError("delta must lie in (0, 1), got " + std::to_string(delta_));
    }
    if (rates_.empty()) {
      rates_.assign(static_cast<std::size_t>(module_count_), 0.0);
    }
    if (rates_.size() != static_cast<std::size_t>(module_count_)) {
      throw ValidationError("observed rates length must equal module count");
    }
    for (double r : rates_) {
      if (!(r >= 0.0 && r <= 1.0)) {
        throw ValidationError("observed rate must lie in [0, 1], got " + std::to_string(r));
      }
    }
  }

  double target_failure_prob() const { return target_; }
  std::int64_t module_count() const { return module_count_; }
  double uniform_factor() const { return factor_; }
  double delta() const { return delta_; }
  const std::vector<double>& assumed_observed_rates() const { return rates_; }

private:
  double target_;
  std::int64_t module_count_;
  double factor_;
  double delta_;
  std::vector<double> rates_;
};

/// Side-by-side comparison of the modular certification cost and the
/// end-to-end validation floor for one scenario.
struct GapReport {
  std::int64_t per_module_samples;  // minimal m per indicator
  std::int64_t total_samples;       // module_count * per_module_samples
  double e2e_floor;                 // 1 / (2 * target)
  double floor_to_modular_ratio;    // e2e_floor / per_module_samples, unclamped
};

/**
 * Expected number of examples until a single failure is observed at failure
 * rate 2*epsilon: 1 / (2*epsilon). Any end-to-end validation scheme that
 * distinguishes rate <= epsilon from rate >= 2*epsilon must observe on this
 * order of examples, so this is the floor the modular approach is compared
 * against.
 */
double e2e_validation_lower_bound(double epsilon);

/**
 * Minimal sample size for the exact-binomial threshold test of the
 * validation task, scanning m upward and, within each m, choosing the
 * smallest threshold k with P[Bin(m, eps) > k] <= delta; m is accepted once
 * P[Bin(m, 2*eps) <= k] <= delta as well. Tails are exact binomial sums
 * accumulated in log space. Worst-case composite hypotheses are evaluated at
 * their extreme points eps and 2*eps.
 *
 * Feasibility is not monotone in m (discrete thresholds open and close small
 * infeasible pockets above the minimum), so the scan is what guarantees the
 * returned m is minimal.
 *
 * Throws CapacityError when the plan would exceed `sample_cap`.
 */
PlanResult validation_sample_size(const ValidationTask& task,
                                  std::int64_t sample_cap = kDefaultSampleCap);

/**
 * Order-of-magnitude training-sample estimate vc_dimension / epsilon.
 * A heuristic label for reports, never a certified bound.
 */
double vc_training_bound(std::int64_t vc_dimension, double epsilon);

/**
 * Minimal per-indicator sample count m such that the composition bound with
 * k_t = round(rate_t * m) failures, the scenario's uniform factor and delta,
 * falls to the target. Binary search over m (the bound is nonincreasing in m
 * at fixed rates), followed by a local walk that pins minimality against the
 * rounding of k_t. With all rates zero the result agrees with the closed
 * form 4 c ln(T/delta) / target^(1/T) to within one sample.
 *
 * Throws CapacityError, carrying the bound achieved at the cap, when the
 * target is unreachable within `sample_cap`.
 */
std::int64_t modular_certification_plan(const GapScenario& scenario,
                                        std::int64_t sample_cap = kDefaultSampleCap);

/// Full comparison for one scenario; see GapReport. The ratio is reported
/// as computed, including values <= 1 at lax targets.
GapReport gap_report(const GapScenario& scenario, std::int64_t sample_cap = kDefaultSampleCap);

}  // namespace modcert

#endif  // MODCERT_PLANNING_HPP_
