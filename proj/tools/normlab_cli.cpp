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

// normlab command line:
//   normlab --list
//   normlab run --scenario NAME [--dim N] [--eps E] [--delta D] [--lambda L]
//               [--tol T] [--samples S] [--seed K] [--out PATH] [--format json|csv]
//   normlab check-all [--seed K] [--tol T]
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or config error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normlab/normlab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const char* status_word(nl_check_status s) {
  switch (s) {
    case NL_CHECK_PASS: return "PASS";
    case NL_CHECK_FAIL: return "FAIL";
    case NL_CHECK_SKIPPED: return "SKIP";
  }
  return "????";
}

void print_checks(const nl_report* report, std::ostream& os) {
  const size_t n = nl_report_check_count(report);
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    nl_check_status status = NL_CHECK_FAIL;
    double value = 0.0;
    if (nl_report_check(report, i, &name, &status, &value) != NL_OK) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    os << status_word(status) << "  " << name << "  " << buf << "\n";
  }
}

// Runs one scenario; returns an exit code and leaves the report in *out.
int run_one(const nl_config& cfg, nl_report** out) {
  const nl_status st = nl_scenario_run(&cfg, out);
  if (st == NL_ERR_INVALID_PARAMETER || st == NL_ERR_NULL_ARGUMENT) {
    std::cerr << "normlab: " << nl_last_error() << "\n";
    return kExitUsage;
  }
  if (st != NL_OK) {
    std::cerr << "normlab: " << cfg.scenario << ": " << nl_status_name(st) << ": " << nl_last_error()
              << "\n";
    return kExitFail;
  }
  return nl_report_failures(*out) == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normlab: numerical renorming laboratory"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "Print the scenario names");

  nl_config cfg;
  nl_config_default(&cfg);
  std::string scenario;
  std::string out_path;
  std::string format = "json";
  double delta = -1.0;
  double tol = -1.0;

  std::vector<std::string> names;
  for (size_t i = 0; i < nl_scenario_count(); ++i) names.emplace_back(nl_scenario_name(i));

  CLI::App* run = app.add_subcommand("run", "Run one scenario and write its report");
  run->add_option("--scenario", scenario, "Scenario name")->required()->check(CLI::IsMember(names));
  run->add_option("--dim", cfg.dim, "Truncation dimension");
  run->add_option("--eps", cfg.eps, "Slice depth / perturbation parameter in (0, 1)");
  run->add_option("--delta", delta, "Override the scenario's delta values");
  run->add_option("--lambda", cfg.lambda, "Porosity constant in (0, 1)");
  run->add_option("--tol", tol, "Tolerance for every check");
  run->add_option("--samples", cfg.samples, "Random samples per sampled check");
  run->add_option("--seed", cfg.seed, "64-bit seed");
  run->add_option("--out", out_path, "Report file (default: standard output)");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* all = app.add_subcommand("check-all", "Run every scenario at its defaults");
  all->add_option("--seed", cfg.seed, "64-bit seed");
  all->add_option("--tol", tol, "Tolerance for every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (list) {
    for (const auto& n : names) std::cout << n << "\n";
    return kExitPass;
  }
  cfg.delta = delta;
  cfg.tol = tol;
  if (delta != -1.0 && !(delta > 0.0 && delta < 1.0)) {
    std::cerr << "normlab: delta must lie in (0, 1)\n";
    return kExitUsage;
  }
  if (tol != -1.0 && !(tol > 0.0)) {
    std::cerr << "normlab: tol must be positive\n";
    return kExitUsage;
  }

  if (*run) {
    cfg.scenario = scenario.c_str();
    nl_report* report = nullptr;
    const int code = run_one(cfg, &report);
    if (!report) return code;
    char* text = nullptr;
    const nl_status st = format == "csv" ? nl_report_csv(report, &text) : nl_report_json(report, 1, &text);
    if (st != NL_OK) {
      std::cerr << "normlab: " << nl_last_error() << "\n";
      nl_report_free(report);
      return kExitFail;
    }
    if (out_path.empty()) {
      std::cout << text;
      print_checks(report, std::cerr);
    } else {
      std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
      os << text;
      if (!os) {
        std::cerr << "normlab: cannot write " << out_path << "\n";
        nl_string_free(text);
        nl_report_free(report);
        return kExitUsage;
      }
      print_checks(report, std::cout);
    }
    nl_string_free(text);
    nl_report_free(report);
    return code;
  }

  if (*all) {
    int worst = kExitPass;
    for (const auto& n : names) {
      nl_config c = cfg;
      c.scenario = n.c_str();
      nl_report* report = nullptr;
      const int code = run_one(c, &report);
      worst = std::max(worst, code);
      if (report) {
        std::cout << "== " << n << " (" << nl_report_failures(report) << " failing)\n";
        print_checks(report, std::cout);
        nl_report_free(report);
      }
    }
    std::cout << (worst == kExitPass ? "all scenarios pass\n" : "some checks fail\n");
    return worst;
  }

  std::cerr << app.help();
  return kExitUsage;
}
