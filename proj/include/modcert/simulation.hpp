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

#ifndef MODCERT_SIMULATION_HPP_
#define MODCERT_SIMULATION_HPP_

#include <cstdint>

#include "modcert/indicator_log.hpp"
#include "modcert/joint_model.hpp"

namespace modcert {

/// Default hard cap on Monte Carlo trials per experiment.
inline constexpr std::int64_t kDefaultTrialsCap = 1'000'000;

/// Outcome of a Monte Carlo coverage experiment: in how many of `trials`
/// repetitions the claimed high-confidence bound actually covered the truth.
struct CoverageResult {
  std::int64_t trials;
  std::int64_t violations;  // trials where bound value < true probability
  double coverage;          // 1 - violations / trials
  std::uint64_t base_seed;
};

/**
 * Draw m examples from the joint model by inverse CDF over the outcome
 * table, using the xoshiro256++ stream for `seed`. One uniform draw per
 * example; identical (model, m, seed) produce bit-identical logs on every
 * platform. Indicators are named "z1".."zT".
 */
IndicatorLog sample(const JointIndicatorModel& model, std::int64_t m, std::uint64_t seed);

/**
 * Empirical coverage of the composition bound against the model's ground
 * truth. Each trial draws a fresh log of size m (per-trial seed
 * mix_seed(base_seed, trial)), summarizes per-indicator failure counts, and
 * computes the composition bound at the given delta using the TRUE
 * independence factors from exact_statistics. A violation is a trial whose
 * bound falls strictly below the true conjunction probability; the
 * comparison is exact, with no slack in the bound's favor.
 *
 * With a single indicator this doubles as the coverage test of the
 * single-coin Bernstein bound.
 *
 * `threads` may be raised to run trials concurrently; the derived per-trial
 * seeds make the violation count identical under any schedule.
 */
CoverageResult coverage_experiment(const JointIndicatorModel& model, std::int64_t m, double delta,
                                   std::int64_t trials, std::uint64_t base_seed, int threads = 1,
                                   std::int64_t trials_cap = kDefaultTrialsCap);

}  // namespace modcert

#endif  // MODCERT_SIMULATION_HPP_
