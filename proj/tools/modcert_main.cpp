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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modcert/bounds.hpp"
#include "modcert/digest.hpp"
#include "modcert/log_io.hpp"
#include "modcert/model_io.hpp"
#include "modcert/planning.hpp"
#include "modcert/report.hpp"
#include "modcert/simulation.hpp"
#include "modcert/version.hpp"

namespace {

using modcert::ReportFormat;

// Exit codes: 0 success, 1 usage, 2 data/validation, 3 assumption violation.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAssumption = 3;

struct OutputOptions {
  std::string format = "text";
  std::string out_path;

  ReportFormat report_format() const {
    return format == "json" ? ReportFormat::kJson : ReportFormat::kText;
  }
};

void add_output_options(CLI::App* cmd, OutputOptions& options) {
  cmd->add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", options.out_path, "Write output to a file instead of stdout");
}

void write_output(const OutputOptions& options, const std::string& payload) {
  if (options.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(options.out_path, std::ios::binary);
  if (!out) {
    throw modcert::ValidationError("cannot open output file \"" + options.out_path + "\"");
  }
  out << payload;
}

std::string render(const nlohmann::json& doc, const OutputOptions& options,
                   const std::string& text) {
  return options.report_format() == ReportFormat::kJson ? doc.dump(2) + "\n" : text;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw modcert::ValidationError("cannot open file \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

modcert::JointIndicatorModel load_model(const std::string& path, std::string& digest) {
  const std::string bytes = read_file_bytes(path);
  digest = modcert::fnv1a64_hex(bytes);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& err) {
    throw modcert::ValidationError("model file \"" + path + "\" is not valid json: " +
                                   err.what());
  }
  return modcert::parse_model_spec(doc);
}

std::vector<modcert::TrialSummary> zip_summaries(const std::vector<std::int64_t>& failures,
                                                 const std::vector<std::int64_t>& trials) {
  if (failures.size() != trials.size()) {
    throw modcert::ValidationError("--failures and --trials need the same number of entries");
  }
  std::vector<modcert::TrialSummary> summaries;
  summaries.reserve(failures.size());
  for (std::size_t i = 0; i < failures.size(); ++i) {
    summaries.emplace_back(failures[i], trials[i]);
  }
  return summaries;
}

int run_bound(std::int64_t failures, std::int64_t trials, double delta,
              const OutputOptions& options) {
  const modcert::TrialSummary summary(failures, trials);
  const modcert::ProbBound bound =
      modcert::bernstein_upper_bound(summary, modcert::ConfidenceLevel(delta));

  nlohmann::json doc;
  doc["failures"] = failures;
  doc["trials"] = trials;
  doc["delta"] = delta;
  doc["empirical_rate"] = summary.empirical_rate();
  doc["bound"] = modcert::bound_to_json(bound);

  std::ostringstream text;
  text << "single-indicator bound (failures " << failures << " / " << trials << ", delta "
       << modcert::format_probability(delta) << ")\n"
       << "empirical rate: " << modcert::format_probability(summary.empirical_rate()) << "\n"
       << "bound: " << modcert::format_probability(bound.value()) << "\n";
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_compose(const std::vector<std::int64_t>& failures, const std::vector<std::int64_t>& trials,
                const std::vector<double>& marginals, std::vector<double> factors,
                std::optional<double> delta, const OutputOptions& options) {
  const bool analytic = !marginals.empty();
  if (analytic == !failures.empty()) {
    throw CLI::ValidationError("compose", "supply either --marginals or --failures/--trials");
  }
  const std::size_t count = analytic ? marginals.size() : failures.size();
  if (factors.empty()) {
    factors.assign(count, 1.0);
  }
  const modcert::IndependenceFactors independence(factors);

  nlohmann::json doc;
  doc["factors"] = factors;
  modcert::ProbBound bound = modcert::ProbBound::one();
  if (analytic) {
    bound = modcert::conjunction_bound_analytic(marginals, independence);
    doc["marginals"] = marginals;
    doc["mode"] = "analytic";
  } else {
    if (!delta.has_value()) {
      throw CLI::ValidationError("compose", "--delta is required with counted evidence");
    }
    bound = modcert::composition_bound(zip_summaries(failures, trials), independence,
                                       modcert::ConfidenceLevel(*delta));
    doc["failures"] = failures;
    doc["trials"] = trials;
    doc["delta"] = *delta;
    doc["mode"] = "counts";
  }
  doc["bound"] = modcert::bound_to_json(bound);

  std::ostringstream text;
  text << "composed conjunction bound over " << count << " indicator(s)\n"
       << "bound: " << modcert::format_probability(bound.value()) << "\n"
       << "log bound: " << bound.log_value() << "\n";
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_system(const std::vector<double>& module_bounds, double residual,
               const OutputOptions& options) {
  modcert::ModuleBoundSet set;
  for (double b : module_bounds) {
    set.module_bounds.push_back(modcert::ProbBound::from_value(b));
  }
  set.residual = modcert::ProbBound::from_value(residual);
  const modcert::ProbBound bound = modcert::system_bound(set);

  nlohmann::json doc;
  doc["module_bounds"] = module_bounds;
  doc["residual"] = residual;
  doc["bound"] = modcert::bound_to_json(bound);

  std::ostringstream text;
  text << "system bound over " << module_bounds.size() << " module bound(s), residual "
       << modcert::format_probability(residual) << "\n"
       << "bound: " << modcert::format_probability(bound.value()) << "\n";
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_plan(std::optional<double> epsilon, std::optional<double> delta,
             const std::string& config_path, std::int64_t cap,
             std::optional<std::int64_t> vc_dimension, const OutputOptions& options) {
  if (!config_path.empty()) {
    const modcert::ScenarioConfig config = modcert::load_scenario_file(config_path);
    if (!config.plan.has_value()) {
      throw modcert::ValidationError("scenario \"" + config_path + "\" has no plan block");
    }
    if (!epsilon.has_value()) epsilon = config.plan->epsilon;
    if (!delta.has_value()) delta = config.plan->delta;
  }
  if (!epsilon.has_value() || !delta.has_value()) {
    throw CLI::ValidationError("plan", "--epsilon and --delta (or --config) are required");
  }

  const modcert::ValidationTask task(*epsilon, *delta);
  const modcert::PlanResult plan = modcert::validation_sample_size(task, cap);
  const double floor = modcert::e2e_validation_lower_bound(*epsilon);

  nlohmann::json doc;
  doc["epsilon"] = *epsilon;
  doc["delta"] = *delta;
  doc["samples_required"] = plan.samples_required;
  doc["decision_threshold"] = plan.decision_threshold;
  doc["achieved_alpha"] = plan.achieved_alpha;
  doc["achieved_beta"] = plan.achieved_beta;
  doc["e2e_floor"] = floor;

  std::ostringstream text;
  text << "validation plan for distinguishing failure rate <= " << *epsilon << " from >= "
       << 2 * *epsilon << " (delta " << *delta << ")\n"
       << "samples required: " << plan.samples_required << "\n"
       << "decision threshold: declare good iff failures <= " << plan.decision_threshold << "\n"
       << "achieved alpha: " << modcert::format_probability(plan.achieved_alpha) << "\n"
       << "achieved beta: " << modcert::format_probability(plan.achieved_beta) << "\n"
       << "expected examples to one failure at rate 2*epsilon: " << floor << "\n";
  if (vc_dimension.has_value()) {
    const double training = modcert::vc_training_bound(*vc_dimension, *epsilon);
    doc["vc_training_estimate"] = training;
    text << "heuristic training-sample estimate (VC " << *vc_dimension << "): " << training
         << " (order of magnitude only, not a certified bound)\n";
  }
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_gap(std::optional<double> target, std::optional<std::int64_t> modules,
            std::optional<double> factor_flag, std::optional<double> delta,
            const std::vector<double>& rates, const std::string& config_path, std::int64_t cap,
            const OutputOptions& options) {
  std::vector<double> observed = rates;
  double factor = 1.0;
  if (!config_path.empty()) {
    const modcert::ScenarioConfig config = modcert::load_scenario_file(config_path);
    if (!config.gap.has_value()) {
      throw modcert::ValidationError("scenario \"" + config_path + "\" has no gap block");
    }
    if (!target.has_value()) target = config.gap->target;
    if (!modules.has_value()) modules = config.gap->modules;
    if (!delta.has_value()) delta = config.gap->delta;
    if (observed.empty()) observed = config.gap->rates;
    factor = config.gap->factor;
  }
  if (factor_flag.has_value()) {
    factor = *factor_flag;
  }
  if (!target.has_value() || !modules.has_value() || !delta.has_value()) {
    throw CLI::ValidationError("gap", "--target, --modules and --delta (or --config) are required");
  }

  const modcert::GapScenario scenario(*target, *modules, factor, *delta, observed);
  const modcert::GapReport report = modcert::gap_report(scenario, cap);

  nlohmann::json doc;
  doc["target"] = *target;
  doc["modules"] = *modules;
  doc["factor"] = factor;
  doc["delta"] = *delta;
  doc["per_module_samples"] = report.per_module_samples;
  doc["total_samples"] = report.total_samples;
  doc["e2e_floor"] = report.e2e_floor;
  doc["floor_to_modular_ratio"] = report.floor_to_modular_ratio;

  std::ostringstream text;
  text << "modular vs end-to-end validation gap (target "
       << modcert::format_probability(*target) << ", " << *modules << " indicator(s), factor "
       << factor << ", delta " << *delta << ")\n"
       << "per-module samples: " << report.per_module_samples << "\n"
       << "total modular samples: " << report.total_samples << "\n"
       << "end-to-end floor: " << report.e2e_floor << "\n"
       << "floor / per-module ratio: " << report.floor_to_modular_ratio << "\n";
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_simulate(const std::string& model_path, std::int64_t samples, std::uint64_t seed,
                 const std::string& log_out, const std::string& log_format_name,
                 const OutputOptions& options) {
  std::string digest;
  const modcert::JointIndicatorModel model = load_model(model_path, digest);
  const modcert::IndicatorLog log = modcert::sample(model, samples, seed);

  if (!log_out.empty()) {
    std::ofstream out(log_out, std::ios::binary);
    if (!out) {
      throw modcert::ValidationError("cannot open log output file \"" + log_out + "\"");
    }
    modcert::write_log(out, log,
                       log_format_name == "jsonl" ? modcert::LogFormat::kJsonl
                                                  : modcert::LogFormat::kCsv);
  }

  const std::vector<std::int64_t> counts = log.failure_counts();
  std::vector<double> rates;
  rates.reserve(counts.size());
  for (std::int64_t k : counts) {
    rates.push_back(static_cast<double>(k) / static_cast<double>(samples));
  }

  nlohmann::json doc;
  doc["model_digest"] = digest;
  doc["samples"] = samples;
  doc["seed"] = seed;
  doc["indicators"] = log.indicator_names();
  doc["failure_counts"] = counts;
  doc["empirical_rates"] = rates;

  std::ostringstream text;
  text << "sampled " << samples << " examples from " << model_path << " (seed " << seed << ")\n";
  for (std::size_t t = 0; t < counts.size(); ++t) {
    text << "  " << log.indicator_names()[t] << ": " << counts[t] << " failures, rate "
         << modcert::format_probability(rates[t]) << "\n";
  }
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_coverage(const std::string& model_path, std::int64_t samples, double delta,
                 std::int64_t trials, std::uint64_t seed, int threads,
                 const OutputOptions& options) {
  std::string digest;
  const modcert::JointIndicatorModel model = load_model(model_path, digest);
  const modcert::CoverageResult result =
      modcert::coverage_experiment(model, samples, delta, trials, seed, threads);

  // Thread count deliberately left out: the result must be byte-identical
  // under any schedule.
  nlohmann::json doc;
  doc["model_digest"] = digest;
  doc["samples"] = samples;
  doc["delta"] = delta;
  doc["trials"] = result.trials;
  doc["violations"] = result.violations;
  doc["coverage"] = result.coverage;
  doc["base_seed"] = result.base_seed;

  std::ostringstream text;
  text << "coverage of the composition bound on " << model_path << "\n"
       << "samples per trial: " << samples << ", delta " << delta << ", trials "
       << result.trials << " (base seed " << result.base_seed << ")\n"
       << "violations: " << result.violations << "\n"
       << "coverage: " << result.coverage << " (target >= " << 1.0 - delta << ")\n";
  write_output(options, render(doc, options, text.str()));
  return kExitOk;
}

int run_report(const std::string& config_path, const OutputOptions& options) {
  const modcert::ScenarioConfig config = modcert::load_scenario_file(config_path);
  const modcert::CertificationReport report = modcert::run_scenario(config);
  write_output(options, modcert::emit_report(report, options.report_format()));
  return report.status == "ok" ? kExitOk : kExitAssumption;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Failure-probability certification for modular systems"};
  app.set_version_flag("--version", std::string(modcert::kToolName) + " " +
                                        modcert::kToolVersion);
  app.require_subcommand(1);

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Single-indicator Bernstein upper bound");
  std::int64_t bound_failures = 0;
  std::int64_t bound_trials = 0;
  double bound_delta = 0.0;
  OutputOptions bound_out;
  bound_cmd->add_option("--failures", bound_failures, "Observed failure count")->required();
  bound_cmd->add_option("--trials", bound_trials, "Number of trials")->required();
  bound_cmd->add_option("--delta", bound_delta, "Confidence budget in (0, 1]")->required();
  add_output_options(bound_cmd, bound_out);

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "Conjunction bound across indicators");
  std::vector<std::int64_t> compose_failures;
  std::vector<std::int64_t> compose_trials;
  std::vector<double> compose_marginals;
  std::vector<double> compose_factors;
  std::optional<double> compose_delta;
  OutputOptions compose_out;
  compose_cmd->add_option("--failures", compose_failures, "Per-indicator failure counts")
      ->delimiter(',');
  compose_cmd->add_option("--trials", compose_trials, "Per-indicator trial counts")
      ->delimiter(',');
  compose_cmd->add_option("--marginals", compose_marginals,
                          "Assumed per-indicator marginals (analytic mode)")
      ->delimiter(',');
  compose_cmd->add_option("--factors", compose_factors,
                          "Approximate-independence factors (default all 1)")
      ->delimiter(',');
  compose_cmd->add_option("--delta", compose_delta, "Confidence budget (counts mode)");
  add_output_options(compose_cmd, compose_out);

  // system
  auto* system_cmd = app.add_subcommand("system", "System bound from module bounds");
  std::vector<double> system_bounds;
  double system_residual = 0.0;
  OutputOptions system_out;
  system_cmd->add_option("--module-bounds", system_bounds, "Per-module failure bounds")
      ->delimiter(',')
      ->required();
  system_cmd->add_option("--residual", system_residual,
                         "Residual failure probability (default 0)");
  add_output_options(system_cmd, system_out);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Exact-binomial validation sample size");
  std::optional<double> plan_epsilon;
  std::optional<double> plan_delta;
  std::string plan_config;
  std::int64_t plan_cap = modcert::kDefaultSampleCap;
  std::optional<std::int64_t> plan_vc;
  OutputOptions plan_out;
  plan_cmd->add_option("--epsilon", plan_epsilon, "Target failure rate");
  plan_cmd->add_option("--delta", plan_delta, "Per-side error budget");
  plan_cmd->add_option("--config", plan_config, "Scenario file with a plan block");
  plan_cmd->add_option("--cap", plan_cap, "Hard cap on the sample size");
  plan_cmd->add_option("--vc-dimension", plan_vc, "Include a heuristic training estimate");
  add_output_options(plan_cmd, plan_out);

  // gap
  auto* gap_cmd = app.add_subcommand("gap", "Modular vs end-to-end sample-size gap");
  std::optional<double> gap_target;
  std::optional<std::int64_t> gap_modules;
  std::optional<double> gap_factor;
  std::optional<double> gap_delta;
  std::vector<double> gap_rates;
  std::string gap_config;
  std::int64_t gap_cap = modcert::kDefaultSampleCap;
  OutputOptions gap_out;
  gap_cmd->add_option("--target", gap_target, "Target conjunction failure probability");
  gap_cmd->add_option("--modules", gap_modules, "Number of indicators");
  gap_cmd->add_option("--factor", gap_factor, "Uniform approximate-independence factor");
  gap_cmd->add_option("--delta", gap_delta, "Confidence budget");
  gap_cmd->add_option("--rates", gap_rates, "Assumed observed rates (default all 0)")
      ->delimiter(',');
  gap_cmd->add_option("--config", gap_config, "Scenario file with a gap block");
  gap_cmd->add_option("--cap", gap_cap, "Hard cap on the sample size");
  add_output_options(gap_cmd, gap_out);

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw an indicator log from a model");
  std::string sim_model;
  std::int64_t sim_samples = 0;
  std::uint64_t sim_seed = 0;
  std::string sim_log_out;
  std::string sim_log_format = "csv";
  OutputOptions sim_out;
  simulate_cmd->add_option("--model", sim_model, "Joint model specification file")->required();
  simulate_cmd->add_option("--samples", sim_samples, "Number of examples to draw")->required();
  simulate_cmd->add_option("--seed", sim_seed, "Deterministic seed")->required();
  simulate_cmd->add_option("--log-out", sim_log_out, "Write the drawn log to this file");
  simulate_cmd->add_option("--log-format", sim_log_format, "Log serialization")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  add_output_options(simulate_cmd, sim_out);

  // coverage
  auto* coverage_cmd = app.add_subcommand("coverage", "Monte Carlo coverage experiment");
  std::string cov_model;
  std::int64_t cov_samples = 0;
  double cov_delta = 0.0;
  std::int64_t cov_trials = 0;
  std::uint64_t cov_seed = 0;
  int cov_threads = 1;
  OutputOptions cov_out;
  coverage_cmd->add_option("--model", cov_model, "Joint model specification file")->required();
  coverage_cmd->add_option("--samples", cov_samples, "Examples per trial")->required();
  coverage_cmd->add_option("--delta", cov_delta, "Confidence budget")->required();
  coverage_cmd->add_option("--trials", cov_trials, "Number of Monte Carlo trials")->required();
  coverage_cmd->add_option("--seed", cov_seed, "Base seed")->required();
  coverage_cmd->add_option("--threads", cov_threads, "Worker threads (result is identical)");
  add_output_options(coverage_cmd, cov_out);

  // report
  auto* report_cmd = app.add_subcommand("report", "Run a certification scenario");
  std::string report_config;
  OutputOptions report_out;
  report_cmd->add_option("--config", report_config, "Scenario configuration file")->required();
  add_output_options(report_cmd, report_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) {
      return app.exit(err);  // --help / --version
    }
    std::cerr << err.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) {
      return run_bound(bound_failures, bound_trials, bound_delta, bound_out);
    }
    if (compose_cmd->parsed()) {
      return run_compose(compose_failures, compose_trials, compose_marginals, compose_factors,
                         compose_delta, compose_out);
    }
    if (system_cmd->parsed()) {
      return run_system(system_bounds, system_residual, system_out);
    }
    if (plan_cmd->parsed()) {
      return run_plan(plan_epsilon, plan_delta, plan_config, plan_cap, plan_vc, plan_out);
    }
    if (gap_cmd->parsed()) {
      return run_gap(gap_target, gap_modules, gap_factor, gap_delta, gap_rates, gap_config,
                     gap_cap, gap_out);
    }
    if (simulate_cmd->parsed()) {
      return run_simulate(sim_model, sim_samples, sim_seed, sim_log_out, sim_log_format, sim_out);
    }
    if (coverage_cmd->parsed()) {
      return run_coverage(cov_model, cov_samples, cov_delta, cov_trials, cov_seed, cov_threads,
                          cov_out);
    }
    if (report_cmd->parsed()) {
      return run_report(report_config, report_out);
    }
  } catch (const CLI::ParseError& err) {
    std::cerr << err.what() << "\n";
    return kExitUsage;
  } catch (const modcert::AssumptionViolationError& err) {
    std::cerr << "assumption violation: " << err.what() << "\n";
    return kExitAssumption;
  } catch (const modcert::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
