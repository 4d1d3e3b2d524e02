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
#include "normlab/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace normlab {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double read_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

CheckStatus parse_status(const std::string& s) {
  if (s == "pass") return CheckStatus::kPass;
  if (s == "fail") return CheckStatus::kFail;
  if (s == "skipped") return CheckStatus::kSkipped;
  raise(ErrorCode::kInvalidParameter, "unknown check status '" + s + "'");
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "?";
}

bool ScenarioReport::all_pass() const { return failures() == 0; }

std::size_t ScenarioReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == CheckStatus::kFail ? 1 : 0;
  return n;
}

const Check* ScenarioReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string to_json(const ScenarioReport& report, bool include_runtime) {
  Json j;
  j["scenario"] = report.scenario;
  Json config = Json::object();
  for (const auto& [key, v] : report.config) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            config[key] = number(x);
          } else {
            config[key] = x;
          }
        },
        v);
  }
  j["config"] = std::move(config);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = to_string(c.status);
    if (c.bracket) {
      jc["bracket"] = Json::array({number(c.bracket->lower), number(c.bracket->upper)});
    } else {
      jc["value"] = c.value ? number(*c.value) : Json(nullptr);
    }
    if (const double* e = std::get_if<double>(&c.expected)) {
      jc["expected"] = number(*e);
    } else {
      jc["expected"] = std::get<std::string>(c.expected);
    }
    jc["tol"] = number(c.tol);
    jc["paper_anchor"] = c.anchor;
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  Json tables = Json::object();
  for (const auto& [name, rows] : report.witness_tables) {
    Json t = Json::array();
    for (const auto& r : rows) {
      t.push_back(Json{{"n", r.n}, {"a", number(r.a)}, {"b", number(r.b)}, {"g", number(r.g)}});
    }
    tables[name] = std::move(t);
  }
  j["witness_tables"] = std::move(tables);
  if (include_runtime) j["runtime_ms"] = number(report.runtime_ms);
  return j.dump(2) + "\n";
}

ScenarioReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    raise(ErrorCode::kInvalidParameter, std::string("report is not valid JSON: ") + e.what());
  }
  ScenarioReport r;
  try {
    r.scenario = j.at("scenario").get<std::string>();
    for (const auto& [key, v] : j.at("config").items()) {
      if (v.is_number_integer()) {
        r.config.emplace_back(key, v.get<std::int64_t>());
      } else if (v.is_string()) {
        r.config.emplace_back(key, v.get<std::string>());
      } else {
        r.config.emplace_back(key, read_number(v));
      }
    }
    for (const auto& jc : j.at("checks")) {
      Check c;
      c.name = jc.at("name").get<std::string>();
      c.status = parse_status(jc.at("status").get<std::string>());
      if (jc.contains("bracket")) {
        c.bracket = Bracket{read_number(jc["bracket"][0]), read_number(jc["bracket"][1])};
      } else if (!jc.at("value").is_null()) {
        c.value = jc["value"].get<double>();
      } else {
        c.value = std::numeric_limits<double>::quiet_NaN();
      }
      const Json& e = jc.at("expected");
      if (e.is_string()) {
        c.expected = e.get<std::string>();
      } else {
        c.expected = read_number(e);
      }
      c.tol = read_number(jc.at("tol"));
      c.anchor = jc.at("paper_anchor").get<std::string>();
      if (jc.contains("note")) c.note = jc["note"].get<std::string>();
      r.checks.push_back(std::move(c));
    }
    for (const auto& [name, rows] : j.at("witness_tables").items()) {
      std::vector<WitnessRow> out;
      for (const auto& row : rows) {
        out.push_back({row.at("n").get<int>(), read_number(row.at("a")), read_number(row.at("b")),
                       read_number(row.at("g"))});
      }
      r.witness_tables.emplace_back(name, std::move(out));
    }
    if (j.contains("runtime_ms")) r.runtime_ms = read_number(j["runtime_ms"]);
  } catch (const Json::exception& e) {
    raise(ErrorCode::kInvalidParameter, std::string("report does not match the schema: ") + e.what());
  }
  return r;
}

std::string to_csv(const ScenarioReport& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.primary.header.size(); ++i) {
    os << (i ? "," : "") << report.primary.header[i];
  }
  os << "\n";
  for (const auto& row : report.primary.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_number(row[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace normlab
