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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "modcert/bounds.hpp"
#include "modcert/prob_bound.hpp"

using namespace modcert;

namespace {

// Independent closed-form oracle in extended precision. Kept deliberately
// separate from the library's double-precision path.
long double bernstein_oracle(long double failures, long double trials, long double delta) {
  const long double rate = failures / trials;
  const long double log_confidence = std::log(1.0L / delta);
  const long double raw =
      rate + std::sqrt(2.0L * rate * log_confidence / trials) + 4.0L * log_confidence / trials;
  return std::min(1.0L, raw);
}

double rel_err(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

}  // namespace

TEST_CASE("trial summary validation") {
  CHECK(TrialSummary(0, 1).empirical_rate() == 0.0);
  CHECK(TrialSummary(37, 100).empirical_rate() == doctest::Approx(0.37));
  CHECK_THROWS_AS(TrialSummary(5, 4), ValidationError);
  CHECK_THROWS_AS(TrialSummary(-1, 4), ValidationError);
  CHECK_THROWS_AS(TrialSummary(0, 0), ValidationError);
}

TEST_CASE("confidence level validation") {
  CHECK(ConfidenceLevel(1.0).delta() == 1.0);
  CHECK_THROWS_AS(ConfidenceLevel(0.0), ValidationError);
  CHECK_THROWS_AS(ConfidenceLevel(1.5), ValidationError);
  CHECK_THROWS_AS(ConfidenceLevel(-0.1), ValidationError);
}

TEST_CASE("prob bound representation") {
  const ProbBound half = ProbBound::from_value(0.5);
  CHECK(std::exp(half.log_value()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ProbBound::zero().is_zero());
  CHECK(ProbBound::zero().value() == 0.0);
  CHECK(ProbBound::one().log_value() == 0.0);
  CHECK_THROWS_AS(ProbBound::from_value(1.5), ValidationError);
  CHECK_THROWS_AS(ProbBound::from_value(-0.1), ValidationError);
  CHECK_THROWS_AS(ProbBound::from_log(0.5), ValidationError);
  CHECK_THROWS_AS(ProbBound::from_parts(0.5, std::log(0.25)), ValidationError);
}

TEST_CASE("bernstein bound frozen examples") {
  // 4 ln(20) / 1000, extended-precision value frozen.
  const ProbBound zero_fail =
      bernstein_upper_bound(TrialSummary(0, 1000), ConfidenceLevel(0.05));
  CHECK(rel_err(zero_fail.value(), 0.011982929094215964) < 1e-12);

  const ProbBound ten_fail =
      bernstein_upper_bound(TrialSummary(10, 1000), ConfidenceLevel(0.05));
  CHECK(rel_err(ten_fail.value(), 0.029723384214625863) < 1e-12);

  // delta = 1 kills both slack terms; the bound is exactly the rate.
  const ProbBound identity = bernstein_upper_bound(TrialSummary(37, 100), ConfidenceLevel(1.0));
  CHECK(identity.value() == TrialSummary(37, 100).empirical_rate());
}

TEST_CASE("bernstein bound matches extended-precision oracle on a grid") {
  for (std::int64_t m : {100, 1000, 1000000}) {
    for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, m / 100, m / 10, m}) {
      for (double delta : {0.2, 0.05, 0.001, 1.0}) {
        const double expected = static_cast<double>(
            bernstein_oracle(static_cast<long double>(k), static_cast<long double>(m), delta));
        const double actual =
            bernstein_upper_bound(TrialSummary(k, m), ConfidenceLevel(delta)).value();
        INFO("k=" << k << " m=" << m << " delta=" << delta);
        CHECK(std::abs(actual - expected) <= 1e-12 * expected);
      }
    }
  }
}

TEST_CASE("bernstein bound never falls below the empirical rate") {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<std::int64_t> trials_dist(1, 1000000);
  std::uniform_real_distribution<double> delta_dist(1e-6, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::int64_t m = trials_dist(gen);
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, m)(gen);
    const TrialSummary summary(k, m);
    const double bound =
        bernstein_upper_bound(summary, ConfidenceLevel(delta_dist(gen))).value();
    CHECK(bound >= summary.empirical_rate());
  }
}

TEST_CASE("bernstein bound monotonicity") {
  std::mt19937_64 gen(23);
  std::uniform_int_distribution<std::int64_t> trials_dist(2, 100000);
  std::uniform_real_distribution<double> delta_dist(1e-6, 1.0);

  SUBCASE("tighter confidence widens the bound") {
    for (int rep = 0; rep < 2000; ++rep) {
      const std::int64_t m = trials_dist(gen);
      const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, m)(gen);
      double d1 = delta_dist(gen);
      double d2 = delta_dist(gen);
      if (d1 > d2) std::swap(d1, d2);  // d1 <= d2
      const double tight = bernstein_upper_bound(TrialSummary(k, m), ConfidenceLevel(d1)).value();
      const double loose = bernstein_upper_bound(TrialSummary(k, m), ConfidenceLevel(d2)).value();
      CHECK(tight >= loose);
    }
  }

  SUBCASE("more zero-failure evidence never loosens the bound") {
    for (int rep = 0; rep < 2000; ++rep) {
      const std::int64_t m = trials_dist(gen);
      const std::int64_t extra = std::uniform_int_distribution<std::int64_t>(1, 100000)(gen);
      const double delta = delta_dist(gen);
      const double before = bernstein_upper_bound(TrialSummary(0, m), ConfidenceLevel(delta)).value();
      const double after =
          bernstein_upper_bound(TrialSummary(0, m + extra), ConfidenceLevel(delta)).value();
      CHECK(after <= before);
    }
  }
}

TEST_CASE("composition bound reduces to the single-coin bound bit for bit") {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<std::int64_t> trials_dist(1, 1000000);
  std::uniform_real_distribution<double> delta_dist(1e-9, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::int64_t m = trials_dist(gen);
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, m)(gen);
    const double delta = delta_dist(gen);
    const std::vector<TrialSummary> summaries{TrialSummary(k, m)};
    const ProbBound composed =
        composition_bound(summaries, IndependenceFactors({1.0}), ConfidenceLevel(delta));
    const ProbBound single = bernstein_upper_bound(summaries[0], ConfidenceLevel(delta));
    CHECK(composed.value() == single.value());
    CHECK(composed.log_value() == single.log_value());
  }
}

TEST_CASE("composition bound frozen two-indicator example") {
  // (1.1 * 4 ln(40) / 1e6)^2, extended-precision value frozen.
  const std::vector<TrialSummary> summaries{TrialSummary(0, 1000000), TrialSummary(0, 1000000)};
  const ProbBound bound = composition_bound(summaries, IndependenceFactors({1.1, 1.1}),
                                            ConfidenceLevel(0.05));
  CHECK(rel_err(bound.value(), 2.6344762029840894e-10) < 1e-12);
}

TEST_CASE("composition bound edge cases") {
  const std::vector<TrialSummary> summaries{TrialSummary(3, 10), TrialSummary(0, 10)};

  SUBCASE("zero factor annihilates") {
    const ProbBound bound =
        composition_bound(summaries, IndependenceFactors({0.0, 2.0}), ConfidenceLevel(0.1));
    CHECK(bound.value() == 0.0);
    CHECK(bound.is_zero());
  }

  SUBCASE("length mismatch rejected") {
    CHECK_THROWS_AS(
        composition_bound(summaries, IndependenceFactors({1.0}), ConfidenceLevel(0.1)),
        ValidationError);
  }

  SUBCASE("empty input rejected") {
    CHECK_THROWS_AS(composition_bound({}, IndependenceFactors({1.0}), ConfidenceLevel(0.1)),
                    ValidationError);
    CHECK_THROWS_AS(IndependenceFactors({}), ValidationError);
  }

  SUBCASE("negative factor rejected") {
    CHECK_THROWS_AS(IndependenceFactors({1.0, -0.5}), ValidationError);
  }

  SUBCASE("result is clipped to 1") {
    const ProbBound bound =
        composition_bound(summaries, IndependenceFactors({50.0, 50.0}), ConfidenceLevel(0.1));
    CHECK(bound.value() == 1.0);
    CHECK(bound.log_value() == 0.0);
  }
}

TEST_CASE("composition bound tighter confidence never shrinks it") {
  std::mt19937_64 gen(37);
  std::uniform_int_distribution<std::int64_t> trials_dist(1, 100000);
  std::uniform_real_distribution<double> delta_dist(1e-6, 1.0);
  std::uniform_real_distribution<double> factor_dist(0.0, 3.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 6)(gen);
    std::vector<TrialSummary> summaries;
    std::vector<double> factors;
    for (std::size_t t = 0; t < count; ++t) {
      const std::int64_t m = trials_dist(gen);
      summaries.emplace_back(std::uniform_int_distribution<std::int64_t>(0, m)(gen), m);
      factors.push_back(factor_dist(gen));
    }
    double d1 = delta_dist(gen);
    double d2 = delta_dist(gen);
    if (d1 > d2) std::swap(d1, d2);
    const IndependenceFactors independence(factors);
    const double tight = composition_bound(summaries, independence, ConfidenceLevel(d1)).value();
    const double loose = composition_bound(summaries, independence, ConfidenceLevel(d2)).value();
    CHECK(tight >= loose);
  }
}

TEST_CASE("analytic conjunction bound reproduces the three-indicator example") {
  const std::vector<double> marginals{1e-6, 1e-6, 1e-6};
  const ProbBound bound =
      conjunction_bound_analytic(marginals, IndependenceFactors({1.1, 1.1, 1.1}));
  CHECK(rel_err(bound.value(), 1.331e-18) < 1e-9);
  // No underflow: the linear value is positive and the log form pins the
  // magnitude to better than 1e-9.
  CHECK(bound.value() > 0.0);
  CHECK(std::abs(bound.log_value() - (-41.160601134479848)) <= 1e-9);
}

TEST_CASE("analytic conjunction bound identities") {
  SUBCASE("unit factors give the plain product") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> p_dist(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
      const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 6)(gen);
      std::vector<double> marginals;
      double product = 1.0;
      for (std::size_t t = 0; t < count; ++t) {
        marginals.push_back(p_dist(gen));
        product *= marginals.back();
      }
      const ProbBound bound =
          conjunction_bound_analytic(marginals, IndependenceFactors::uniform(count, 1.0));
      CHECK(bound.value() == doctest::Approx(product).epsilon(1e-12));
    }
  }

  SUBCASE("two-stage product") {
    const std::vector<double> marginals{0.3, 0.5};
    const ProbBound bound =
        conjunction_bound_analytic(marginals, IndependenceFactors({1.0, 1.0}));
    CHECK(bound.value() == doctest::Approx(0.15).epsilon(1e-15));
  }

  SUBCASE("marginal outside [0,1] rejected") {
    const std::vector<double> bad{0.5, 1.5};
    CHECK_THROWS_AS(conjunction_bound_analytic(bad, IndependenceFactors({1.0, 1.0})),
                    ValidationError);
  }

  SUBCASE("deep products stay representable in log form") {
    // 40 marginals of 1e-9: linear value underflows double, log form must not.
    const std::vector<double> marginals(40, 1e-9);
    const ProbBound bound =
        conjunction_bound_analytic(marginals, IndependenceFactors::uniform(40, 1.0));
    CHECK(bound.value() == 0.0);
    CHECK(!bound.is_zero());
    CHECK(bound.log_value() == doctest::Approx(40 * std::log(1e-9)).epsilon(1e-12));
  }
}

TEST_CASE("system bound") {
  SUBCASE("direct formula") {
    ModuleBoundSet set;
    set.module_bounds = {ProbBound::from_value(0.1), ProbBound::from_value(0.2)};
    set.residual = ProbBound::from_value(0.01);
    CHECK(system_bound(set).value() == doctest::Approx(0.61).epsilon(1e-15));
  }

  SUBCASE("empty module list returns the residual") {
    ModuleBoundSet set;
    set.residual = ProbBound::from_value(0.37);
    CHECK(system_bound(set).value() == doctest::Approx(0.37).epsilon(1e-15));
  }

  SUBCASE("uncertifiable hypothesis is a distinct error carrying the sum") {
    ModuleBoundSet set;
    set.module_bounds = {ProbBound::from_value(0.4), ProbBound::from_value(0.2)};
    try {
      system_bound(set);
      FAIL("expected AssumptionViolationError");
    } catch (const AssumptionViolationError& err) {
      CHECK(err.offending_sum() == doctest::Approx(0.6).epsilon(1e-15));
    }
  }

  SUBCASE("monotone in every module bound and the residual") {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> small(0.0, 0.1);
    for (int rep = 0; rep < 1000; ++rep) {
      ModuleBoundSet set;
      const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 4)(gen);
      for (std::size_t j = 0; j < count; ++j) {
        set.module_bounds.push_back(ProbBound::from_value(small(gen)));
      }
      set.residual = ProbBound::from_value(small(gen));
      const double base = system_bound(set).value();

      ModuleBoundSet bumped = set;
      const std::size_t which = std::uniform_int_distribution<std::size_t>(0, count)(gen);
      const double bump = small(gen) * 0.1;
      if (which == count) {
        bumped.residual = ProbBound::from_value(bumped.residual.value() + bump);
      } else {
        bumped.module_bounds[which] =
            ProbBound::from_value(bumped.module_bounds[which].value() + bump);
      }
      CHECK(system_bound(bumped).value() >= base);
    }
  }

  SUBCASE("clipped at 1") {
    ModuleBoundSet set;
    set.module_bounds = {ProbBound::from_value(0.5)};
    set.residual = ProbBound::from_value(0.9);
    CHECK(system_bound(set).value() == 1.0);
  }
}
