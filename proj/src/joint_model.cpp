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

#include "modcert/joint_model.hpp"

#include <cmath>
#include <string>

namespace modcert {

namespace {

// Neumaier-compensated accumulator. The mass invariant is checked at 1e-12
// absolute over up to 2^20 terms, which naive summation cannot honor.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double get() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_rates(std::span<const double> rates, const char* what) {
  if (rates.empty() || rates.size() > JointIndicatorModel::kMaxIndicators) {
    throw ValidationError(std::string(what) + " must list between 1 and " +
                          std::to_string(JointIndicatorModel::kMaxIndicators) +
                          " indicators, got " + std::to_string(rates.size()));
  }
  for (double p : rates) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(std::string(what) + " entries must lie in [0, 1], got " +
                            std::to_string(p));
    }
  }
}

// prod_t rates[t]^{bit_t} (1 - rates[t])^{1 - bit_t} for one outcome.
double outcome_product(std::uint32_t outcome, std::span<const double> rates) {
  double product = 1.0;
  for (std::size_t t = 0; t < rates.size(); ++t) {
    product *= (outcome >> t) & 1u ? rates[t] : 1.0 - rates[t];
  }
  return product;
}

}  // namespace

JointIndicatorModel::JointIndicatorModel(int indicator_count, std::vector<double> probabilities)
    : indicator_count_(indicator_count), probabilities_(std::move(probabilities)) {
  if (indicator_count_ < 1 || indicator_count_ > kMaxIndicators) {
    throw ValidationError("indicator count must lie in [1, " + std::to_string(kMaxIndicators) +
                          "], got " + std::to_string(indicator_count_));
  }
  const std::size_t expected = std::size_t{1} << indicator_count_;
  if (probabilities_.size() != expected) {
    throw ValidationError("probability table must have 2^" + std::to_string(indicator_count_) +
                          " = " + std::to_string(expected) + " entries, got " +
                          std::to_string(probabilities_.size()));
  }
  CompensatedSum mass;
  for (double p : probabilities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError("probability table entries must be finite and >= 0");
    }
    mass.add(p);
  }
  if (std::abs(mass.get() - 1.0) > kMassTolerance) {
    throw ValidationError("probability table mass is " + std::to_string(mass.get()) +
                          ", not 1 within " + std::to_string(kMassTolerance));
  }
}

JointIndicatorModel model_independent(std::span<const double> marginals) {
  check_rates(marginals, "marginals");
  const int count = static_cast<int>(marginals.size());
  std::vector<double> table(std::size_t{1} << count);
  for (std::uint32_t outcome = 0; outcome < table.size(); ++outcome) {
    table[outcome] = outcome_product(outcome, marginals);
  }
  return JointIndicatorModel(count, std::move(table));
}

JointIndicatorModel model_common_cause(double q, std::span<const double> base_rates,
                                       std::span<const double> fault_rates) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ValidationError("mixture weight q must lie in [0, 1], got " + std::to_string(q));
  }
  if (base_rates.size() != fault_rates.size()) {
    throw ValidationError("base/fault rate length mismatch: " +
                          std::to_string(base_rates.size()) + " vs " +
                          std::to_string(fault_rates.size()));
  }
  check_rates(base_rates, "base rates");
  check_rates(fault_rates, "fault rates");
  const int count = static_cast<int>(base_rates.size());
  std::vector<double> table(std::size_t{1} << count);
  for (std::uint32_t outcome = 0; outcome < table.size(); ++outcome) {
    table[outcome] = q * outcome_product(outcome, fault_rates) +
                     (1.0 - q) * outcome_product(outcome, base_rates);
  }
  return JointIndicatorModel(count, std::move(table));
}

ExactStatistics exact_statistics(const JointIndicatorModel& model) {
  const int count = model.indicator_count();
  const auto& table = model.probabilities();

  ExactStatistics stats;
  stats.marginals.resize(count);
  stats.independence_factors.assign(count, 1.0);
  stats.degenerate.assign(count, false);

  for (int t = 0; t < count; ++t) {
    CompensatedSum marginal;
    for (std::uint32_t outcome = 0; outcome < table.size(); ++outcome) {
      if ((outcome >> t) & 1u) {
        marginal.add(table[outcome]);
      }
    }
    stats.marginals[t] = marginal.get();
  }

  // prefix[t] = P[z_1 = ... = z_t = 1]; prefix[0] = 1 (empty conjunction).
  std::vector<double> prefix(static_cast<std::size_t>(count) + 1, 1.0);
  for (int t = 1; t <= count; ++t) {
    const std::uint32_t mask = (std::uint32_t{1} << t) - 1u;
    CompensatedSum sum;
    for (std::uint32_t outcome = 0; outcome < table.size(); ++outcome) {
      if ((outcome & mask) == mask) {
        sum.add(table[outcome]);
      }
    }
    prefix[t] = sum.get();
  }
  stats.conjunction_prob = prefix[count];

  for (int t = 0; t < count; ++t) {
    if (prefix[t] <= 0.0 || stats.marginals[t] <= 0.0) {
      // Degenerate conditioning: the conjunction is 0 and any factor keeps
      // the product bound valid, so report the neutral 1 and flag it.
      stats.independence_factors[t] = 1.0;
      stats.degenerate[t] = true;
    } else {
      stats.independence_factors[t] = (prefix[t + 1] / prefix[t]) / stats.marginals[t];
    }
  }
  return stats;
}

}  // namespace modcert
