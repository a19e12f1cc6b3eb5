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

#include "modcert/simulation.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include "modcert/rng.hpp"

namespace modcert {

namespace {

std::vector<double> build_cdf(const JointIndicatorModel& model) {
  std::vector<double> cdf(model.probabilities().size());
  double running = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    running += model.probabilities()[i];
    cdf[i] = running;
  }
  // Total mass is 1 within the model tolerance; pin the top so every
  // uniform draw lands inside the table.
  cdf.back() = 1.0;
  return cdf;
}

std::uint32_t draw_outcome(const std::vector<double>& cdf, Xoshiro256pp& rng) {
  const double u = rng.next_double();
  return static_cast<std::uint32_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

}  // namespace

IndicatorLog sample(const JointIndicatorModel& model, std::int64_t m, std::uint64_t seed) {
  if (m < 1) {
    throw ValidationError("sample count must be >= 1, got " + std::to_string(m));
  }
  const std::vector<double> cdf = build_cdf(model);
  const std::size_t width = static_cast<std::size_t>(model.indicator_count());

  std::vector<std::string> names;
  names.reserve(width);
  for (std::size_t t = 0; t < width; ++t) {
    names.push_back("z" + std::to_string(t + 1));
  }

  Xoshiro256pp rng(seed);
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(m) * width);
  for (std::int64_t row = 0; row < m; ++row) {
    const std::uint32_t outcome = draw_outcome(cdf, rng);
    for (std::size_t t = 0; t < width; ++t) {
      bits.push_back(static_cast<std::uint8_t>((outcome >> t) & 1u));
    }
  }
  return IndicatorLog(std::move(names), std::move(bits));
}

CoverageResult coverage_experiment(const JointIndicatorModel& model, std::int64_t m, double delta,
                                   std::int64_t trials, std::uint64_t base_seed, int threads,
                                   std::int64_t trials_cap) {
  if (m < 1) {
    throw ValidationError("sample count must be >= 1, got " + std::to_string(m));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("delta must lie in (0, 1), got " + std::to_string(delta));
  }
  if (trials < 1) {
    throw ValidationError("trial count must be >= 1, got " + std::to_string(trials));
  }
  if (trials > trials_cap) {
    throw CapacityError("trial count " + std::to_string(trials) + " exceeds the cap " +
                        std::to_string(trials_cap));
  }

  const ExactStatistics stats = exact_statistics(model);
  const IndependenceFactors factors(stats.independence_factors);
  const ConfidenceLevel confidence(delta);
  const double true_conjunction = stats.conjunction_prob;
  const std::vector<double> cdf = build_cdf(model);
  const std::size_t width = static_cast<std::size_t>(model.indicator_count());

  const auto count_violations = [&](std::int64_t first, std::int64_t last) {
    std::int64_t violations = 0;
    std::vector<std::int64_t> counts(width);
    std::vector<TrialSummary> summaries;
    for (std::int64_t trial = first; trial < last; ++trial) {
      Xoshiro256pp rng(mix_seed(base_seed, static_cast<std::uint64_t>(trial)));
      std::fill(counts.begin(), counts.end(), 0);
      for (std::int64_t i = 0; i < m; ++i) {
        const std::uint32_t outcome = draw_outcome(cdf, rng);
        for (std::size_t t = 0; t < width; ++t) {
          counts[t] += (outcome >> t) & 1u;
        }
      }
      summaries.clear();
      for (std::size_t t = 0; t < width; ++t) {
        summaries.emplace_back(counts[t], m);
      }
      if (composition_bound(summaries, factors, confidence).value() < true_conjunction) {
        ++violations;
      }
    }
    return violations;
  };

  std::int64_t violations = 0;
  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), trials));
  if (workers == 1) {
    violations = count_violations(0, trials);
  } else {
    std::vector<std::int64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const std::int64_t first = trials * w / workers;
      const std::int64_t last = trials * (w + 1) / workers;
      pool.emplace_back([&, w, first, last] { partial[w] = count_violations(first, last); });
    }
    for (std::thread& worker : pool) {
      worker.join();
    }
    for (std::int64_t part : partial) {
      violations += part;
    }
  }

  return {trials, violations,
          1.0 - static_cast<double>(violations) / static_cast<double>(trials), base_seed};
}

}  // namespace modcert
