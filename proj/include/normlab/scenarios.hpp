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

// End-to-end experiments. Each scenario builds one of the renormings, runs its
// named checks and returns a report; its output depends only on the config.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normlab/report.hpp"

namespace normlab {

inline constexpr double kBracketCheckTol = 1e-4;
inline constexpr double kClosedCheckTol = 1e-6;

struct ScenarioConfig {
  std::string name;
  std::size_t dim = 16;
  double eps = 0.5;
  std::optional<double> delta;  // overrides the scenario's own delta list
  double lambda = 0.5;
  // One tolerance for every check when set; otherwise kBracketCheckTol for
  // bracketed quantities and kClosedCheckTol for closed-form ones.
  std::optional<double> tol;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;

  double bracket_tol() const { return tol ? *tol : kBracketCheckTol; }
  double closed_tol() const { return tol ? *tol : kClosedCheckTol; }
};

// Throws kInvalidParameter when the config is out of range or names an
// unknown scenario.
void validate(const ScenarioConfig& cfg);

const std::vector<std::string>& scenario_names();

ScenarioReport run_scenario(const ScenarioConfig& cfg);

ScenarioReport scenario_draga(const ScenarioConfig& cfg);
ScenarioReport scenario_main_g(const ScenarioConfig& cfg);
ScenarioReport scenario_main_f(const ScenarioConfig& cfg);
ScenarioReport scenario_porosity(const ScenarioConfig& cfg);
ScenarioReport scenario_ell1(const ScenarioConfig& cfg);
ScenarioReport scenario_lur_sum(const ScenarioConfig& cfg);

}  // namespace normlab
