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

#include "modcert/scenario.hpp"

#include <fstream>
#include <sstream>

#include "modcert/digest.hpp"
#include "modcert/json_util.hpp"

namespace modcert {

namespace {

IndicatorConfig parse_indicator(const nlohmann::json& doc, const std::string& context) {
  json_util::reject_unknown_keys(doc, {"name", "factor", "failures", "trials", "log", "marginal"},
                                 context);
  IndicatorConfig indicator;
  indicator.name = json_util::require_string(doc, "name", context);
  if (doc.contains("factor")) {
    indicator.factor = json_util::require_number(doc, "factor", context);
  }
  if (!(indicator.factor >= 0.0)) {
    throw ValidationError(context + ": factor must be >= 0");
  }
  if (doc.contains("failures") || doc.contains("trials")) {
    indicator.failures = json_util::require_integer(doc, "failures", context);
    indicator.trials = json_util::require_integer(doc, "trials", context);
  }
  if (doc.contains("log")) {
    indicator.log_ref = json_util::require_string(doc, "log", context);
  }
  if (doc.contains("marginal")) {
    indicator.marginal = json_util::require_number(doc, "marginal", context);
    if (!(*indicator.marginal >= 0.0 && *indicator.marginal <= 1.0)) {
      throw ValidationError(context + ": marginal must lie in [0, 1]");
    }
  }

  const int evidence_kinds = static_cast<int>(indicator.failures.has_value()) +
                             static_cast<int>(indicator.log_ref.has_value()) +
                             static_cast<int>(indicator.marginal.has_value());
  if (evidence_kinds != 1) {
    throw ValidationError(context +
                          ": exactly one of counts (failures+trials), a log reference, or a "
                          "marginal is required");
  }
  return indicator;
}

ModuleConfig parse_module(const nlohmann::json& doc, const std::string& context) {
  json_util::reject_unknown_keys(doc, {"name", "indicators"}, context);
  ModuleConfig module;
  module.name = json_util::require_string(doc, "name", context);
  const nlohmann::json& indicators = json_util::require_field(doc, "indicators", context);
  if (!indicators.is_array() || indicators.empty()) {
    throw ValidationError(context + ": \"indicators\" must be a nonempty array");
  }
  std::size_t index = 0;
  for (const nlohmann::json& entry : indicators) {
    module.indicators.push_back(
        parse_indicator(entry, context + ".indicators[" + std::to_string(index) + "]"));
    ++index;
  }
  // Analytic (assumed-marginal) and counts-based evidence cannot mix inside
  // one module: the composed bound would have no single confidence statement.
  bool any_analytic = false;
  bool any_counts = false;
  for (const IndicatorConfig& indicator : module.indicators) {
    (indicator.analytic() ? any_analytic : any_counts) = true;
  }
  if (any_analytic && any_counts) {
    throw ValidationError(context + ": indicators mix assumed marginals with counted evidence");
  }
  return module;
}

}  // namespace

ScenarioConfig parse_scenario(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("scenario must be a json object");
  }
  json_util::reject_unknown_keys(
      doc, {"schema_version", "delta", "modules", "residual", "plan", "gap"}, "scenario");

  ScenarioConfig config;
  config.schema_version = static_cast<int>(json_util::require_integer(doc, "schema_version",
                                                                      "scenario"));
  if (config.schema_version != 1) {
    throw ValidationError("unsupported schema_version " + std::to_string(config.schema_version) +
                          ", expected 1");
  }
  config.delta = json_util::require_number(doc, "delta", "scenario");
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    throw ValidationError("scenario delta must lie in (0, 1]");
  }

  const nlohmann::json& modules = json_util::require_field(doc, "modules", "scenario");
  if (!modules.is_array() || modules.empty()) {
    throw ValidationError("scenario \"modules\" must be a nonempty array");
  }
  std::size_t index = 0;
  for (const nlohmann::json& entry : modules) {
    config.modules.push_back(parse_module(entry, "modules[" + std::to_string(index) + "]"));
    ++index;
  }

  if (doc.contains("residual")) {
    config.residual = json_util::require_number(doc, "residual", "scenario");
    config.residual_specified = true;
    if (!(config.residual >= 0.0 && config.residual <= 1.0)) {
      throw ValidationError("residual must lie in [0, 1]");
    }
  }

  if (doc.contains("plan")) {
    const nlohmann::json& plan = doc.at("plan");
    json_util::reject_unknown_keys(plan, {"epsilon", "delta"}, "plan");
    config.plan = PlanConfig{json_util::require_number(plan, "epsilon", "plan"),
                             json_util::require_number(plan, "delta", "plan")};
  }
  if (doc.contains("gap")) {
    const nlohmann::json& gap = doc.at("gap");
    json_util::reject_unknown_keys(gap, {"target", "modules", "factor", "delta", "rates"}, "gap");
    GapConfig params;
    params.target = json_util::require_number(gap, "target", "gap");
    params.modules = json_util::require_integer(gap, "modules", "gap");
    params.delta = json_util::require_number(gap, "delta", "gap");
    if (gap.contains("factor")) {
      params.factor = json_util::require_number(gap, "factor", "gap");
    }
    if (gap.contains("rates")) {
      params.rates = json_util::require_number_list(gap, "rates", "gap");
    }
    config.gap = std::move(params);
  }

  config.config_digest = fnv1a64_hex(doc.dump());
  return config;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open scenario file \"" + path.string() + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError("scenario file \"" + path.string() + "\" is not valid json: " +
                          err.what());
  }
  ScenarioConfig config = parse_scenario(doc);
  config.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  config.config_digest = fnv1a64_hex(text);
  return config;
}

}  // namespace modcert
