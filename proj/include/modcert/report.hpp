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

#ifndef MODCERT_REPORT_HPP_
#define MODCERT_REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modcert/prob_bound.hpp"
#include "modcert/scenario.hpp"

namespace modcert {

enum class ReportFormat { kJson, kText };

/// Per-indicator line of a report. Counts-based indicators carry their
/// evidence (k, m), their delta share and the single-coin bound at that
/// delta; analytic indicators carry the assumed marginal. Every recorded
/// bound can be reproduced by re-running the corresponding bound operation
/// on the recorded inputs.
struct IndicatorReport {
  std::string name;
  double factor = 1.0;
  std::optional<std::int64_t> failures;
  std::optional<std::int64_t> trials;
  std::optional<double> delta;
  std::optional<double> empirical_rate;
  std::optional<double> marginal;
  ProbBound bound = ProbBound::one();
};

struct ModuleReport {
  std::string name;
  bool analytic = false;
  std::optional<double> delta;  // module's confidence share; absent when analytic
  std::vector<IndicatorReport> indicators;
  ProbBound bound = ProbBound::one();
};

struct AssumptionNote {
  std::string id;
  std::string detail;
};

/**
 * Assembled certification output: per-indicator and per-module bounds, the
 * system-level bound, and the ledger of every assumption the numbers rest
 * on. `status` is "ok" or "assumption_violated"; in the latter case no
 * system bound is present and the ledger records the offending sum.
 */
struct CertificationReport {
  int schema_version = 1;
  std::string tool_name;
  std::string tool_version;
  std::string config_digest;
  std::map<std::string, std::string> log_digests;  // log reference -> digest
  double delta = 0.0;
  std::string status;
  std::vector<ModuleReport> modules;
  double residual = 0.0;
  bool residual_assumed_zero = false;
  double module_bound_sum = 0.0;
  std::optional<ProbBound> system;
  std::vector<AssumptionNote> assumptions;
};

/**
 * Execute a scenario: summarize every indicator, compose per-module bounds
 * with the confidence budget split evenly across counts-based modules and
 * then across indicators within each module, and decompose the system-level
 * bound over the module bounds and the residual.
 *
 * A module-bound sum above 0.5 does not throw; it is reported as status
 * "assumption_violated" so callers can surface it as a distinguished exit.
 */
CertificationReport run_scenario(const ScenarioConfig& config);

/// Stable-key-ordered json form; lossless round trip with report_from_json.
nlohmann::json report_to_json(const CertificationReport& report);

/// {"value": v, "log_value": l} with null standing in for the -inf log of an
/// exact zero (json has no infinities).
nlohmann::json bound_to_json(const ProbBound& bound);

CertificationReport report_from_json(const nlohmann::json& doc);

/// Serialize as json (stable key order) or as a human-readable table with
/// the assumption ledger.
std::string emit_report(const CertificationReport& report, ReportFormat format);

/// Probability rendering used in text reports: scientific notation with six
/// significant digits below 1e-4, general format otherwise.
std::string format_probability(double value);

}  // namespace modcert

#endif  // MODCERT_REPORT_HPP_
