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

#include "modcert/planning.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace modcert {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Natural log of the Bin(m, p) probability mass at j.
double log_binom_pmf(std::int64_t m, std::int64_t j, double p) {
  if (p == 0.0) return j == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return j == m ? 0.0 : kNegInf;
  const double md = static_cast<double>(m);
  const double jd = static_cast<double>(j);
  return std::lgamma(md + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(md - jd + 1.0) +
         jd * std::log(p) + (md - jd) * std::log1p(-p);
}

struct ThresholdCheck {
  bool feasible;
  std::int64_t threshold;
  double alpha;  // P[Bin(m, 2 eps) <= threshold]
  double beta;   // P[Bin(m, eps) > threshold]
};

// For a fixed m, locate the smallest threshold k whose miss probability
// beta(k) = P[Bin(m, eps) > k] is within delta, then test whether the false
// accept probability alpha(k) = P[Bin(m, 2 eps) <= k] is too. alpha grows and
// beta shrinks with k, so that single k decides feasibility of this m, and it
// is the smallest feasible threshold when one exists.
ThresholdCheck check_sample_size(std::int64_t m, double epsilon, double delta) {
  const double p_good = epsilon;
  const double p_bad = 2.0 * epsilon;

  // Suffix log-sum-exp of the Bin(m, eps) pmf: suffix[k] = log P[Bin >= k].
  std::vector<double> suffix(static_cast<std::size_t>(m) + 2, kNegInf);
  for (std::int64_t j = m; j >= 0; --j) {
    suffix[j] = log_add(log_binom_pmf(m, j, p_good), suffix[j + 1]);
  }

  double log_alpha = kNegInf;
  for (std::int64_t k = 0; k <= m; ++k) {
    log_alpha = log_add(log_alpha, log_binom_pmf(m, k, p_bad));
    const double beta = std::exp(suffix[k + 1]);
    if (beta <= delta) {
      const double alpha = std::exp(log_alpha);
      return {alpha <= delta, k, alpha, beta};
    }
  }
  // beta(m) = 0, so the loop always returns.
  return {false, m, 1.0, 0.0};
}

}  // namespace

double e2e_validation_lower_bound(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  return 1.0 / (2.0 * epsilon);
}

PlanResult validation_sample_size(const ValidationTask& task, std::int64_t sample_cap) {
  if (sample_cap < 1) {
    throw ValidationError("sample cap must be >= 1, got " + std::to_string(sample_cap));
  }
  // Even the information-theoretic floor is out of reach: fail fast rather
  // than scanning toward a cap that cannot be met.
  if (e2e_validation_lower_bound(task.epsilon()) > static_cast<double>(sample_cap)) {
    throw CapacityError("validation plan needs at least " +
                        std::to_string(e2e_validation_lower_bound(task.epsilon())) +
                        " samples, above the cap " + std::to_string(sample_cap));
  }
  for (std::int64_t m = 1; m <= sample_cap; ++m) {
    const ThresholdCheck check = check_sample_size(m, task.epsilon(), task.delta());
    if (check.feasible) {
      return {m, check.threshold, check.alpha, check.beta};
    }
  }
  throw CapacityError("no feasible validation plan within the sample cap " +
                      std::to_string(sample_cap));
}

double vc_training_bound(std::int64_t vc_dimension, double epsilon) {
  if (vc_dimension < 1) {
    throw ValidationError("VC dimension must be >= 1, got " + std::to_string(vc_dimension));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  return static_cast<double>(vc_dimension) / epsilon;
}

std::int64_t modular_certification_plan(const GapScenario& scenario, std::int64_t sample_cap) {
  if (sample_cap < 1) {
    throw ValidationError("sample cap must be >= 1, got " + std::to_string(sample_cap));
  }
  const IndependenceFactors factors = IndependenceFactors::uniform(
      static_cast<std::size_t>(scenario.module_count()), scenario.uniform_factor());
  const ConfidenceLevel confidence(scenario.delta());
  const double target = scenario.target_failure_prob();

  const auto bound_at = [&](std::int64_t m) {
    std::vector<TrialSummary> summaries;
    summaries.reserve(scenario.assumed_observed_rates().size());
    for (double rate : scenario.assumed_observed_rates()) {
      summaries.emplace_back(std::llround(rate * static_cast<double>(m)), m);
    }
    return composition_bound(summaries, factors, confidence).value();
  };

  if (bound_at(1) <= target) {
    return 1;
  }
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  while (bound_at(hi) > target) {
    if (hi >= sample_cap) {
      throw CapacityError("composition bound at the sample cap " + std::to_string(sample_cap) +
                          " is " + std::to_string(bound_at(sample_cap)) +
                          ", above the target " + std::to_string(target),
                          bound_at(sample_cap));
    }
    lo = hi;
    hi = hi <= sample_cap / 2 ? hi * 2 : sample_cap;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (bound_at(mid) <= target ? hi : lo) = mid;
  }
  // k_t = round(rate * m) makes the bound only locally monotone in m; walk
  // down to the edge so that bound(m) <= target < bound(m - 1) holds exactly.
  while (hi > 1 && bound_at(hi - 1) <= target) {
    --hi;
  }
  return hi;
}

GapReport gap_report(const GapScenario& scenario, std::int64_t sample_cap) {
  const std::int64_t per_module = modular_certification_plan(scenario, sample_cap);
  const double floor = e2e_validation_lower_bound(scenario.target_failure_prob());
  return {per_module, scenario.module_count() * per_module, floor,
          floor / static_cast<double>(per_module)};
}

}  // namespace modcert
