/*
 * Copyright 2026 The normlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "normlab/space.hpp"
#include <cmath>
#include <limits>

#include "doctest.h"
#include "json.hpp"
#include "normlab/report.hpp"
#include "normlab/scenarios.hpp"

using namespace normlab;

namespace {

ScenarioReport sample_report() {
  ScenarioReport r;
  r.scenario = "draga";
  r.config = {{"dim", std::int64_t{16}}, {"eps", 0.5}, {"base", std::string("sup")}};
  Check a;
  a.name = "draga.e1_squared";
  a.status = CheckStatus::kPass;
  a.value = 1.25;
  a.expected = 1.25;
  a.tol = 1e-12;
  a.anchor = "Draga norm: squared value at e1";
  Check b;
  b.name = "draga.bracketed";
  b.status = CheckStatus::kFail;
  b.bracket = Bracket{0.1 + 0.2, 0.30000000000000004};
  b.expected = std::string(">= 2");
  b.tol = 1e-4;
  b.anchor = "bracket";
  b.note = "a note";
  Check c;
  c.name = "draga.skipped";
  c.status = CheckStatus::kSkipped;
  c.anchor = "skip";
  r.checks = {a, b, c};
  r.witness_tables = {{"draga.mlur", {{2, 1.0 / 3.0, 0.0, 2.0615528128088303}, {3, 1e-17, 0.0, 2.0}}}};
  r.primary = Table{{"n", "a"}, {{2.0, 1.0 / 3.0}}};
  r.runtime_ms = 12.5;
  return r;
}

}  // namespace

TEST_CASE("report JSON layout") {
  const auto j = nlohmann::json::parse(to_json(sample_report()));
  CHECK(j["scenario"] == "draga");
  CHECK(j["config"]["dim"] == 16);
  CHECK(j["config"]["base"] == "sup");
  REQUIRE(j["checks"].size() == 3);
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][0]["value"] == 1.25);
  CHECK(j["checks"][0]["paper_anchor"] == "Draga norm: squared value at e1");
  CHECK_FALSE(j["checks"][0].contains("note"));
  CHECK(j["checks"][1]["bracket"].size() == 2);
  CHECK(j["checks"][1]["expected"] == ">= 2");
  CHECK(j["checks"][1]["note"] == "a note");
  CHECK(j["checks"][2]["status"] == "skipped");
  CHECK(j["witness_tables"]["draga.mlur"][0]["n"] == 2);
  CHECK(j["runtime_ms"] == 12.5);
  CHECK_FALSE(nlohmann::json::parse(to_json(sample_report(), false)).contains("runtime_ms"));
}

TEST_CASE("report JSON round-trips bitwise") {
  const std::string text = to_json(sample_report());
  const ScenarioReport back = report_from_json(text);
  CHECK(to_json(back) == text);
  CHECK(back.checks[1].bracket->lower == 0.1 + 0.2);
  CHECK(back.witness_tables[0].second[0].a == 1.0 / 3.0);
}

TEST_CASE("non-finite numbers are written as null") {
  ScenarioReport r = sample_report();
  r.checks[0].value = std::numeric_limits<double>::quiet_NaN();
  r.checks[1].bracket = Bracket{0.0, std::numeric_limits<double>::infinity()};
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["checks"][0]["value"].is_null());
  CHECK(j["checks"][1]["bracket"][1].is_null());
}

TEST_CASE("report CSV") {
  const std::string csv = to_csv(sample_report());
  CHECK(csv.rfind("n,a\n", 0) == 0);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("report queries") {
  const ScenarioReport r = sample_report();
  CHECK_FALSE(r.all_pass());
  CHECK(r.failures() == 1);
  REQUIRE(r.find("draga.bracketed"));
  CHECK(r.find("draga.bracketed")->note == "a note");
  CHECK(r.find("missing") == nullptr);
}

TEST_CASE("real scenario reports round-trip") {
  ScenarioConfig cfg;
  cfg.name = "ell1";
  cfg.dim = 8;
  const std::string text = to_json(run_scenario(cfg));
  CHECK(to_json(report_from_json(text)) == text);
}
