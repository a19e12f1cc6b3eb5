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
#include <filesystem>
#include <functional>
#include <sstream>

#include "modcert/bounds.hpp"
#include "modcert/log_io.hpp"
#include "modcert/model_io.hpp"
#include "modcert/report.hpp"
#include "modcert/scenario.hpp"
#include "modcert/simulation.hpp"

using namespace modcert;

namespace {

const std::filesystem::path kFixtures = MODCERT_FIXTURES_DIR;

IndicatorLog parse_csv(const std::string& text) {
  std::istringstream in(text);
  return ingest_log(in, LogFormat::kCsv);
}

IndicatorLog parse_jsonl(const std::string& text) {
  std::istringstream in(text);
  return ingest_log(in, LogFormat::kJsonl);
}

std::size_t parse_error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& err) {
    return err.line();
  }
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_CASE("csv ingestion") {
  SUBCASE("two rows, two indicators") {
    const IndicatorLog log = parse_csv("example_id,z1,z2\na,0,1\nb,0,0\n");
    CHECK(log.row_count() == 2);
    CHECK(log.indicator_count() == 2);
    CHECK(log.indicator_names() == std::vector<std::string>{"z1", "z2"});
    CHECK(log.failure_counts() == std::vector<std::int64_t>{0, 1});
  }

  SUBCASE("crlf line endings are tolerated") {
    const IndicatorLog log = parse_csv("example_id,z1\r\na,1\r\n");
    CHECK(log.row_count() == 1);
    CHECK(log.failure_counts() == std::vector<std::int64_t>{1});
  }

  SUBCASE("non-binary cell names its line") {
    CHECK(parse_error_line([] { parse_csv("example_id,z1\na,0\nb,2\n"); }) == 3);
  }

  SUBCASE("inconsistent row width names its line") {
    CHECK(parse_error_line([] { parse_csv("example_id,z1,z2\na,0,1\nb,0\n"); }) == 3);
  }

  SUBCASE("missing value is rejected, not imputed") {
    CHECK(parse_error_line([] { parse_csv("example_id,z1\na,\n"); }) == 2);
  }

  SUBCASE("malformed header") {
    CHECK(parse_error_line([] { parse_csv("id,z1\na,0\n"); }) == 1);
    CHECK(parse_error_line([] { parse_csv("example_id\na\n"); }) == 1);
  }

  SUBCASE("empty input and header-only input") {
    CHECK(parse_error_line([] { parse_csv(""); }) == 1);
    CHECK_THROWS_AS(parse_csv("example_id,z1\n"), ParseError);
  }

  SUBCASE("empty example id") {
    CHECK(parse_error_line([] { parse_csv("example_id,z1\n,0\n"); }) == 2);
  }
}

TEST_CASE("jsonl ingestion") {
  SUBCASE("single record") {
    const IndicatorLog log = parse_jsonl(R"({"id":"a","indicators":{"z1":1}})" "\n");
    CHECK(log.row_count() == 1);
    CHECK(log.indicator_count() == 1);
    CHECK(log.failure_counts() == std::vector<std::int64_t>{1});
  }

  SUBCASE("indicator order follows the first record, not key sorting") {
    const IndicatorLog log = parse_jsonl(
        R"({"id":"a","indicators":{"zb":1,"za":0}})" "\n"
        R"({"id":"b","indicators":{"zb":0,"za":1}})" "\n");
    CHECK(log.indicator_names() == std::vector<std::string>{"zb", "za"});
    CHECK(log.failure_counts() == std::vector<std::int64_t>{1, 1});
  }

  SUBCASE("line numbers in errors") {
    CHECK(parse_error_line([] { parse_jsonl("{\"id\":\"a\",\"indicators\":{\"z\":1}}\nnot json\n"); }) == 2);
    CHECK(parse_error_line([] {
      parse_jsonl("{\"id\":\"a\",\"indicators\":{\"z\":1}}\n{\"id\":\"b\",\"indicators\":{\"z\":2}}\n");
    }) == 2);
    CHECK(parse_error_line([] {
      parse_jsonl("{\"id\":\"a\",\"indicators\":{\"z\":1}}\n{\"id\":\"b\",\"indicators\":{\"w\":1}}\n");
    }) == 2);
    CHECK(parse_error_line([] { parse_jsonl("{\"indicators\":{\"z\":1}}\n"); }) == 1);
    CHECK(parse_error_line([] { parse_jsonl("{\"id\":\"a\",\"indicators\":{\"z\":true}}\n"); }) == 1);
  }

  SUBCASE("empty input") {
    CHECK(parse_error_line([] { parse_jsonl(""); }) == 1);
  }
}

TEST_CASE("log serialization round trip") {
  const std::vector<double> p{0.3, 0.7};
  const IndicatorLog original = sample(model_independent(p), 50, 1234);

  for (LogFormat format : {LogFormat::kCsv, LogFormat::kJsonl}) {
    std::ostringstream out;
    write_log(out, original, format);
    std::istringstream in(out.str());
    const IndicatorLog parsed = ingest_log(in, format);
    CHECK(parsed == original);
  }
}

TEST_CASE("log format inference") {
  CHECK(log_format_from_extension("x.csv") == LogFormat::kCsv);
  CHECK(log_format_from_extension("dir/x.jsonl") == LogFormat::kJsonl);
  CHECK_THROWS_AS(log_format_from_extension("x.txt"), ValidationError);
  CHECK_THROWS_AS(ingest_log_file(kFixtures / "missing.csv"), ValidationError);
}

TEST_CASE("fixture files ingest to their hand counts") {
  const IndicatorLog csv = ingest_log_file(kFixtures / "logs/demo.csv");
  CHECK(csv.row_count() == 2);
  CHECK(csv.failure_counts() == std::vector<std::int64_t>{0, 1});

  const IndicatorLog jsonl = ingest_log_file(kFixtures / "logs/demo.jsonl");
  CHECK(jsonl.row_count() == 1);
  CHECK(jsonl.indicator_names() == std::vector<std::string>{"z1"});
  CHECK(jsonl.failure_counts() == std::vector<std::int64_t>{1});

  CHECK(parse_error_line([] { ingest_log_file(kFixtures / "logs/bad_cell.csv"); }) == 3);
  CHECK(parse_error_line([] { ingest_log_file(kFixtures / "logs/bad_width.csv"); }) == 2);
}

TEST_CASE("model specification files") {
  CHECK(load_model_file(kFixtures / "model_independent.json").indicator_count() == 1);
  CHECK(load_model_file(kFixtures / "model_common_cause.json").indicator_count() == 2);
  const JointIndicatorModel table = load_model_file(kFixtures / "model_table.json");
  CHECK(table.indicator_count() == 2);
  CHECK(table.probability(3) == 0.03);

  CHECK_THROWS_AS(parse_model_spec(nlohmann::json::parse(R"({"type":"nope"})")),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_model_spec(nlohmann::json::parse(R"({"type":"independent","marginals":[0.1],"x":1})")),
      ValidationError);
}

TEST_CASE("scenario parsing") {
  SUBCASE("fixture with logs, plan and gap blocks") {
    const ScenarioConfig config = load_scenario_file(kFixtures / "log_scenario.json");
    CHECK(config.schema_version == 1);
    CHECK(config.delta == 0.05);
    CHECK(config.modules.size() == 1);
    CHECK(config.modules[0].indicators.size() == 2);
    CHECK(config.modules[0].indicators[1].log_ref == "logs/demo.csv");
    CHECK(config.residual_specified);
    CHECK(config.residual == 0.001);
    REQUIRE(config.plan.has_value());
    CHECK(config.plan->epsilon == 0.1);
    REQUIRE(config.gap.has_value());
    CHECK(config.gap->modules == 3);
    CHECK(!config.config_digest.empty());
  }

  SUBCASE("unknown keys rejected at every level") {
    const char* bad_docs[] = {
        R"({"schema_version":1,"delta":0.05,"modules":[],"surprise":1})",
        R"({"schema_version":1,"delta":0.05,"modules":[{"name":"m","indicators":[],"x":1}]})",
        R"({"schema_version":1,"delta":0.05,
            "modules":[{"name":"m","indicators":[{"name":"z","failures":0,"trials":1,"x":1}]}]})",
    };
    for (const char* doc : bad_docs) {
      CHECK_THROWS_AS(parse_scenario(nlohmann::json::parse(doc)), ValidationError);
    }
  }

  SUBCASE("schema version must be 1") {
    CHECK_THROWS_AS(parse_scenario(nlohmann::json::parse(
                        R"({"schema_version":2,"delta":0.05,"modules":[
                            {"name":"m","indicators":[{"name":"z","failures":0,"trials":1}]}]})")),
                    ValidationError);
  }

  SUBCASE("exactly one evidence kind per indicator") {
    CHECK_THROWS_AS(parse_scenario(nlohmann::json::parse(
                        R"({"schema_version":1,"delta":0.05,"modules":[
                            {"name":"m","indicators":[
                               {"name":"z","failures":0,"trials":1,"marginal":0.1}]}]})")),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(nlohmann::json::parse(
                        R"({"schema_version":1,"delta":0.05,"modules":[
                            {"name":"m","indicators":[{"name":"z"}]}]})")),
                    ValidationError);
  }

  SUBCASE("analytic and counted evidence cannot mix within a module") {
    CHECK_THROWS_AS(parse_scenario(nlohmann::json::parse(
                        R"({"schema_version":1,"delta":0.05,"modules":[
                            {"name":"m","indicators":[
                               {"name":"a","marginal":1e-6},
                               {"name":"b","failures":0,"trials":10}]}]})")),
                    ValidationError);
  }
}

TEST_CASE("run_scenario single-indicator pipeline") {
  const ScenarioConfig config = load_scenario_file(kFixtures / "single_indicator.json");
  const CertificationReport report = run_scenario(config);

  CHECK(report.status == "ok");
  REQUIRE(report.system.has_value());
  const double expected = 2.0 * (4.0 * std::log(20.0) / 1000.0);
  CHECK(std::abs(report.system->value() - expected) <= 1e-9 * expected);
  CHECK(report.residual_assumed_zero);

  REQUIRE(report.modules.size() == 1);
  const ModuleReport& module = report.modules[0];
  CHECK(module.delta == 0.05);
  REQUIRE(module.indicators.size() == 1);
  CHECK(module.indicators[0].delta == 0.05);

  // Every recorded bound reproduces bit for bit from its recorded inputs.
  const IndicatorReport& indicator = module.indicators[0];
  const ProbBound single = bernstein_upper_bound(
      TrialSummary(*indicator.failures, *indicator.trials), ConfidenceLevel(*indicator.delta));
  CHECK(single.value() == indicator.bound.value());
  const std::vector<TrialSummary> summaries{TrialSummary(*indicator.failures, *indicator.trials)};
  const ProbBound composed = composition_bound(summaries, IndependenceFactors({indicator.factor}),
                                               ConfidenceLevel(*module.delta));
  CHECK(composed.value() == module.bound.value());
  ModuleBoundSet set;
  set.module_bounds = {module.bound};
  set.residual = ProbBound::from_value(report.residual);
  CHECK(system_bound(set).value() == report.system->value());
}

TEST_CASE("run_scenario analytic pipeline") {
  const ScenarioConfig config = load_scenario_file(kFixtures / "paper_scenario.json");
  const CertificationReport report = run_scenario(config);

  CHECK(report.status == "ok");
  REQUIRE(report.modules.size() == 1);
  CHECK(report.modules[0].analytic);
  CHECK(std::abs(report.modules[0].bound.value() - 1.331e-18) <= 1e-9 * 1.331e-18);
  CHECK(!report.residual_assumed_zero);  // fixture supplies residual: 0.0 explicitly
  REQUIRE(report.system.has_value());
  CHECK(std::abs(report.system->value() - 2.662e-18) <= 1e-9 * 2.662e-18);
}

TEST_CASE("run_scenario assumption violation") {
  const ScenarioConfig config = load_scenario_file(kFixtures / "violation.json");
  const CertificationReport report = run_scenario(config);
  CHECK(report.status == "assumption_violated");
  CHECK(!report.system.has_value());
  CHECK(report.module_bound_sum > 0.5);
  bool found = false;
  for (const AssumptionNote& note : report.assumptions) {
    if (note.id == "union_bound_violated") {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("run_scenario with log references") {
  const ScenarioConfig config = load_scenario_file(kFixtures / "log_scenario.json");
  const CertificationReport report = run_scenario(config);

  REQUIRE(report.modules.size() == 1);
  const ModuleReport& module = report.modules[0];
  // Hand count of logs/demo.csv: z1 fails 0 of 2, z2 fails 1 of 2.
  CHECK(module.indicators[0].failures == 0);
  CHECK(module.indicators[0].trials == 2);
  CHECK(module.indicators[1].failures == 1);
  CHECK(module.indicators[1].trials == 2);
  CHECK(report.log_digests.count("logs/demo.csv") == 1);

  // Referencing a missing column fails loudly.
  ScenarioConfig broken = config;
  broken.modules[0].indicators[0].name = "zz";
  CHECK_THROWS_AS(run_scenario(broken), ValidationError);
}

TEST_CASE("reports are deterministic and round trip through json") {
  const ScenarioConfig config = load_scenario_file(kFixtures / "log_scenario.json");
  const std::string first = emit_report(run_scenario(config), ReportFormat::kJson);
  const std::string second = emit_report(run_scenario(config), ReportFormat::kJson);
  CHECK(first == second);

  const nlohmann::json parsed = nlohmann::json::parse(first);
  const CertificationReport rebuilt = report_from_json(parsed);
  CHECK(report_to_json(rebuilt) == parsed);
}

TEST_CASE("text report carries the assumption ledger") {
  const ScenarioConfig config = load_scenario_file(kFixtures / "single_indicator.json");
  const std::string text = emit_report(run_scenario(config), ReportFormat::kText);
  CHECK(text.find("residual_assumed_zero") != std::string::npos);
  CHECK(text.find("independence_factors_assumed") != std::string::npos);
  CHECK(text.find("union_bound_certificate") != std::string::npos);
  CHECK(text.find("status: ok") != std::string::npos);
}

TEST_CASE("probability formatting") {
  CHECK(format_probability(1.331e-18) == "1.33100e-18");
  CHECK(format_probability(0.023965858188431928) == "0.0239659");
  CHECK(format_probability(0.0) == "0");
  CHECK(format_probability(1.0) == "1");
  CHECK(format_probability(9.9e-5) == "9.90000e-05");
  CHECK(format_probability(1e-4) == "0.0001");
}
