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
#pragma once

// Scenario reports and their JSON / CSV forms.
//
// JSON layout:
//   { "scenario": str,
//     "config": { key: number | str, ... },
//     "checks": [ { "name", "status", "value" | "bracket": [lo, hi],
//                   "expected": number | str, "tol", "paper_anchor", "note"? } ],
//     "witness_tables": { name: [ { "n", "a", "b", "g" } ] },
//     "runtime_ms": number }
// Non-finite numbers are written as null.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "normlab/bracket.hpp"
#include "normlab/probes.hpp"

namespace normlab {

enum class CheckStatus { kPass, kFail, kSkipped };

const char* to_string(CheckStatus status);

using ConfigValue = std::variant<std::int64_t, double, std::string>;
using Expected = std::variant<double, std::string>;

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::kFail;
  std::optional<double> value;
  std::optional<Bracket> bracket;
  Expected expected = 0.0;
  double tol = 0.0;
  std::string anchor;
  std::string note;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, ConfigValue>> config;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::vector<WitnessRow>>> witness_tables;
  Table primary;  // the CSV form
  double runtime_ms = 0.0;

  bool all_pass() const;
  std::size_t failures() const;
  const Check* find(const std::string& name) const;
};

// include_runtime = false drops runtime_ms, which is the only field that is
// not a function of the configuration.
std::string to_json(const ScenarioReport& report, bool include_runtime = true);
ScenarioReport report_from_json(const std::string& text);
std::string to_csv(const ScenarioReport& report);

}  // namespace normlab
