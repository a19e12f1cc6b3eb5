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

#ifndef MODCERT_SCENARIO_HPP_
#define MODCERT_SCENARIO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modcert/errors.hpp"

namespace modcert {

/**
 * One failure indicator inside a scenario. Its evidence is exactly one of:
 *   - inline counts ("failures" + "trials"),
 *   - a log reference ("log": path, counts taken from the column named like
 *     the indicator),
 *   - an assumed marginal ("marginal": analytic mode, no confidence budget).
 * The approximate-independence factor is a configuration assumption,
 * defaulting to 1.
 */
struct IndicatorConfig {
  std::string name;
  double factor = 1.0;
  std::optional<std::int64_t> failures;
  std::optional<std::int64_t> trials;
  std::optional<std::string> log_ref;
  std::optional<double> marginal;

  bool analytic() const { return marginal.has_value(); }
};

struct ModuleConfig {
  std::string name;
  std::vector<IndicatorConfig> indicators;

  bool analytic() const { return !indicators.empty() && indicators.front().analytic(); }
};

/// Optional planning requests carried inside a scenario file, consumed by
/// the `plan` and `gap` subcommands.
struct PlanConfig {
  double epsilon;
  double delta;
};

struct GapConfig {
  double target;
  std::int64_t modules;
  double factor = 1.0;
  double delta;
  std::vector<double> rates;  // empty = all zero
};

/**
 * Declarative certification scenario: confidence budget, modules with their
 * indicators and independence factors, and the residual assumption.
 * schema_version must be 1; unknown keys anywhere are rejected.
 */
struct ScenarioConfig {
  int schema_version = 1;
  double delta = 0.0;
  std::vector<ModuleConfig> modules;
  double residual = 0.0;
  bool residual_specified = false;
  std::optional<PlanConfig> plan;
  std::optional<GapConfig> gap;

  // Directory log references resolve against (set when loaded from a file).
  std::filesystem::path base_dir;
  // Digest of the originating document, carried into reports.
  std::string config_digest;
};

/// Parse and validate a scenario document. Log references are validated for
/// shape here and resolved when the scenario runs.
ScenarioConfig parse_scenario(const nlohmann::json& doc);

ScenarioConfig load_scenario_file(const std::filesystem::path& path);

}  // namespace modcert

#endif  // MODCERT_SCENARIO_HPP_
