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

#include "modcert/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "modcert/bounds.hpp"
#include "modcert/digest.hpp"
#include "modcert/json_util.hpp"
#include "modcert/log_io.hpp"
#include "modcert/version.hpp"

namespace modcert {

namespace {

struct LoadedLog {
  IndicatorLog log;
  std::string digest;
};

// Each referenced log is read and digested once, however many indicators
// point at it.
const LoadedLog& load_log(const ScenarioConfig& config, const std::string& ref,
                          std::map<std::string, LoadedLog>& cache) {
  const auto hit = cache.find(ref);
  if (hit != cache.end()) {
    return hit->second;
  }
  const std::filesystem::path path =
      config.base_dir.empty() ? std::filesystem::path(ref) : config.base_dir / ref;
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open log file \"" + path.string() + "\" referenced as \"" +
                          ref + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  std::istringstream stream(bytes);
  IndicatorLog log = ingest_log(stream, log_format_from_extension(path));
  return cache.emplace(ref, LoadedLog{std::move(log), fnv1a64_hex(bytes)}).first->second;
}

TrialSummary summarize_indicator(const ScenarioConfig& config, const IndicatorConfig& indicator,
                                 std::map<std::string, LoadedLog>& cache,
                                 CertificationReport& report) {
  if (indicator.failures.has_value()) {
    return TrialSummary(*indicator.failures, *indicator.trials);
  }
  const LoadedLog& loaded = load_log(config, *indicator.log_ref, cache);
  report.log_digests[*indicator.log_ref] = loaded.digest;
  const auto& names = loaded.log.indicator_names();
  for (std::size_t t = 0; t < names.size(); ++t) {
    if (names[t] == indicator.name) {
      return TrialSummary(loaded.log.failure_counts()[t], loaded.log.row_count());
    }
  }
  throw ValidationError("log \"" + *indicator.log_ref + "\" has no indicator column \"" +
                        indicator.name + "\"");
}

ProbBound bound_from_json(const nlohmann::json& doc, const std::string& context) {
  const double value = json_util::require_number(doc, "value", context);
  const nlohmann::json& log_field = json_util::require_field(doc, "log_value", context);
  if (log_field.is_null()) {
    if (value != 0.0) {
      throw ValidationError(context + ": null log_value requires value 0");
    }
    return ProbBound::zero();
  }
  if (!log_field.is_number()) {
    throw ValidationError(context + ": log_value must be a number or null");
  }
  return ProbBound::from_parts(value, log_field.get<double>());
}

template <typename T>
void set_optional(nlohmann::json& obj, const char* key, const std::optional<T>& value) {
  if (value.has_value()) {
    obj[key] = *value;
  }
}

}  // namespace

nlohmann::json bound_to_json(const ProbBound& bound) {
  nlohmann::json out;
  out["value"] = bound.value();
  if (std::isinf(bound.log_value())) {
    out["log_value"] = nullptr;
  } else {
    out["log_value"] = bound.log_value();
  }
  return out;
}

std::string format_probability(double value) {
  char buffer[48];
  if (value > 0.0 && value < 1e-4) {
    std::snprintf(buffer, sizeof buffer, "%.5e", value);
  } else {
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
  }
  return buffer;
}

CertificationReport run_scenario(const ScenarioConfig& config) {
  CertificationReport report;
  report.tool_name = kToolName;
  report.tool_version = kToolVersion;
  report.config_digest = config.config_digest;
  report.delta = config.delta;
  report.residual = config.residual;
  report.residual_assumed_zero = !config.residual_specified;

  std::size_t counted_modules = 0;
  for (const ModuleConfig& module : config.modules) {
    if (!module.analytic()) {
      ++counted_modules;
    }
  }
  // Two-level union bound: the budget is split evenly across the modules
  // that consume evidence, then across indicators inside each module.
  // Analytic modules are assumption-only and draw no budget.
  const double module_delta =
      counted_modules > 0 ? config.delta / static_cast<double>(counted_modules) : 0.0;

  std::map<std::string, LoadedLog> log_cache;
  std::vector<ProbBound> module_bounds;

  for (const ModuleConfig& module : config.modules) {
    ModuleReport module_report;
    module_report.name = module.name;
    module_report.analytic = module.analytic();

    std::vector<double> factor_values;
    for (const IndicatorConfig& indicator : module.indicators) {
      factor_values.push_back(indicator.factor);
    }
    const IndependenceFactors factors(factor_values);

    if (module.analytic()) {
      std::vector<double> marginals;
      for (const IndicatorConfig& indicator : module.indicators) {
        marginals.push_back(*indicator.marginal);
        IndicatorReport line;
        line.name = indicator.name;
        line.factor = indicator.factor;
        line.marginal = indicator.marginal;
        line.bound = ProbBound::from_value(*indicator.marginal);
        module_report.indicators.push_back(std::move(line));
      }
      module_report.bound = conjunction_bound_analytic(marginals, factors);
    } else {
      const double indicator_delta =
          module_delta / static_cast<double>(module.indicators.size());
      module_report.delta = module_delta;
      std::vector<TrialSummary> summaries;
      for (const IndicatorConfig& indicator : module.indicators) {
        const TrialSummary summary = summarize_indicator(config, indicator, log_cache, report);
        IndicatorReport line;
        line.name = indicator.name;
        line.factor = indicator.factor;
        line.failures = summary.failures();
        line.trials = summary.trials();
        line.delta = indicator_delta;
        line.empirical_rate = summary.empirical_rate();
        line.bound = bernstein_upper_bound(summary, ConfidenceLevel(indicator_delta));
        module_report.indicators.push_back(std::move(line));
        summaries.push_back(summary);
      }
      module_report.bound = composition_bound(summaries, factors, ConfidenceLevel(module_delta));
    }

    module_bounds.push_back(module_report.bound);
    report.modules.push_back(std::move(module_report));
  }

  ModuleBoundSet bound_set{module_bounds, ProbBound::from_value(config.residual)};
  double bound_sum = 0.0;
  for (const ProbBound& b : module_bounds) {
    bound_sum += b.value();
  }
  report.module_bound_sum = bound_sum;

  try {
    report.system = system_bound(bound_set);
    report.status = "ok";
    report.assumptions.push_back(
        {"union_bound_certificate",
         "module bound sum " + format_probability(bound_sum) +
             " <= 0.5 certifies that all sub-modules jointly behave with probability >= 1/2"});
  } catch (const AssumptionViolationError& err) {
    report.status = "assumption_violated";
    report.assumptions.push_back(
        {"union_bound_violated",
         "module bound sum " + format_probability(err.offending_sum()) +
             " exceeds 0.5; the system-level decomposition does not apply and no system bound "
             "is emitted"});
  }

  if (counted_modules > 0) {
    report.assumptions.push_back(
        {"delta_allocation",
         "confidence budget " + format_probability(config.delta) + " split evenly across " +
             std::to_string(counted_modules) +
             " counts-based module(s), then evenly across each module's indicators"});
  }
  report.assumptions.push_back(
      {"independence_factors_assumed",
       "approximate-independence factors are unverified configuration inputs, not estimates"});
  if (report.residual_assumed_zero) {
    report.assumptions.push_back(
        {"residual_assumed_zero",
         "residual failure probability (system fails though every sub-module behaved) assumed "
         "0 because none was supplied"});
  } else {
    report.assumptions.push_back(
        {"residual_assumed",
         "residual failure probability " + format_probability(config.residual) +
             " supplied as an assumption, not estimated"});
  }
  return report;
}

nlohmann::json report_to_json(const CertificationReport& report) {
  nlohmann::json doc;
  doc["schema_version"] = report.schema_version;
  doc["tool"] = {{"name", report.tool_name}, {"version", report.tool_version}};

  nlohmann::json inputs;
  inputs["config"] = report.config_digest;
  inputs["logs"] = nlohmann::json::object();
  for (const auto& [ref, digest] : report.log_digests) {
    inputs["logs"][ref] = digest;
  }
  doc["inputs"] = std::move(inputs);

  doc["delta"] = report.delta;
  doc["status"] = report.status;

  doc["modules"] = nlohmann::json::array();
  for (const ModuleReport& module : report.modules) {
    nlohmann::json mod;
    mod["name"] = module.name;
    mod["mode"] = module.analytic ? "analytic" : "counts";
    set_optional(mod, "delta", module.delta);
    mod["bound"] = bound_to_json(module.bound);
    mod["indicators"] = nlohmann::json::array();
    for (const IndicatorReport& indicator : module.indicators) {
      nlohmann::json ind;
      ind["name"] = indicator.name;
      ind["factor"] = indicator.factor;
      set_optional(ind, "failures", indicator.failures);
      set_optional(ind, "trials", indicator.trials);
      set_optional(ind, "delta", indicator.delta);
      set_optional(ind, "empirical_rate", indicator.empirical_rate);
      set_optional(ind, "marginal", indicator.marginal);
      ind["bound"] = bound_to_json(indicator.bound);
      mod["indicators"].push_back(std::move(ind));
    }
    doc["modules"].push_back(std::move(mod));
  }

  doc["residual"] = {{"value", report.residual}, {"assumed_zero", report.residual_assumed_zero}};
  doc["module_bound_sum"] = report.module_bound_sum;
  doc["system"] = report.system.has_value() ? bound_to_json(*report.system)
                                            : nlohmann::json(nullptr);

  doc["assumptions"] = nlohmann::json::array();
  for (const AssumptionNote& note : report.assumptions) {
    doc["assumptions"].push_back({{"id", note.id}, {"detail", note.detail}});
  }
  return doc;
}

CertificationReport report_from_json(const nlohmann::json& doc) {
  CertificationReport report;
  report.schema_version =
      static_cast<int>(json_util::require_integer(doc, "schema_version", "report"));
  const nlohmann::json& tool = json_util::require_field(doc, "tool", "report");
  report.tool_name = json_util::require_string(tool, "name", "report.tool");
  report.tool_version = json_util::require_string(tool, "version", "report.tool");

  const nlohmann::json& inputs = json_util::require_field(doc, "inputs", "report");
  report.config_digest = json_util::require_string(inputs, "config", "report.inputs");
  for (const auto& [ref, digest] : json_util::require_field(inputs, "logs", "report.inputs").items()) {
    report.log_digests[ref] = digest.get<std::string>();
  }

  report.delta = json_util::require_number(doc, "delta", "report");
  report.status = json_util::require_string(doc, "status", "report");

  for (const nlohmann::json& mod : json_util::require_field(doc, "modules", "report")) {
    ModuleReport module;
    module.name = json_util::require_string(mod, "name", "report.module");
    module.analytic = json_util::require_string(mod, "mode", "report.module") == "analytic";
    if (mod.contains("delta")) {
      module.delta = json_util::require_number(mod, "delta", "report.module");
    }
    module.bound = bound_from_json(json_util::require_field(mod, "bound", "report.module"),
                                   "report.module.bound");
    for (const nlohmann::json& ind : json_util::require_field(mod, "indicators", "report.module")) {
      IndicatorReport indicator;
      indicator.name = json_util::require_string(ind, "name", "report.indicator");
      indicator.factor = json_util::require_number(ind, "factor", "report.indicator");
      if (ind.contains("failures")) {
        indicator.failures = json_util::require_integer(ind, "failures", "report.indicator");
        indicator.trials = json_util::require_integer(ind, "trials", "report.indicator");
      }
      if (ind.contains("delta")) {
        indicator.delta = json_util::require_number(ind, "delta", "report.indicator");
      }
      if (ind.contains("empirical_rate")) {
        indicator.empirical_rate =
            json_util::require_number(ind, "empirical_rate", "report.indicator");
      }
      if (ind.contains("marginal")) {
        indicator.marginal = json_util::require_number(ind, "marginal", "report.indicator");
      }
      indicator.bound = bound_from_json(
          json_util::require_field(ind, "bound", "report.indicator"), "report.indicator.bound");
      module.indicators.push_back(std::move(indicator));
    }
    report.modules.push_back(std::move(module));
  }

  const nlohmann::json& residual = json_util::require_field(doc, "residual", "report");
  report.residual = json_util::require_number(residual, "value", "report.residual");
  report.residual_assumed_zero = residual.at("assumed_zero").get<bool>();
  report.module_bound_sum = json_util::require_number(doc, "module_bound_sum", "report");

  const nlohmann::json& system = json_util::require_field(doc, "system", "report");
  if (!system.is_null()) {
    report.system = bound_from_json(system, "report.system");
  }

  for (const nlohmann::json& note : json_util::require_field(doc, "assumptions", "report")) {
    report.assumptions.push_back({json_util::require_string(note, "id", "report.assumption"),
                                  json_util::require_string(note, "detail", "report.assumption")});
  }
  return report;
}

std::string emit_report(const CertificationReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    return report_to_json(report).dump(2) + "\n";
  }

  std::ostringstream out;
  out << "certification report (" << report.tool_name << " " << report.tool_version << ")\n";
  out << "status: " << report.status << "\n";
  out << "delta: " << format_probability(report.delta) << "\n";
  out << "\n";
  for (const ModuleReport& module : report.modules) {
    out << "module " << module.name;
    if (module.analytic) {
      out << " (analytic)";
    } else {
      out << " (counts, delta " << format_probability(*module.delta) << ")";
    }
    out << "\n";
    for (const IndicatorReport& indicator : module.indicators) {
      out << "  " << indicator.name << ": factor " << format_probability(indicator.factor);
      if (indicator.marginal.has_value()) {
        out << ", assumed marginal " << format_probability(*indicator.marginal);
      } else {
        out << ", failures " << *indicator.failures << " / " << *indicator.trials << ", delta "
            << format_probability(*indicator.delta);
      }
      out << ", bound " << format_probability(indicator.bound.value()) << "\n";
    }
    out << "  module bound: " << format_probability(module.bound.value()) << "\n";
  }
  out << "\n";
  out << "module bound sum: " << format_probability(report.module_bound_sum) << "\n";
  out << "residual: " << format_probability(report.residual)
      << (report.residual_assumed_zero ? " (assumed zero)" : " (supplied)") << "\n";
  if (report.system.has_value()) {
    out << "system bound: " << format_probability(report.system->value()) << "\n";
  } else {
    out << "system bound: not emitted\n";
  }
  out << "\n";
  out << "assumptions:\n";
  for (const AssumptionNote& note : report.assumptions) {
    out << "  - [" << note.id << "] " << note.detail << "\n";
  }
  return out.str();
}

}  // namespace modcert
