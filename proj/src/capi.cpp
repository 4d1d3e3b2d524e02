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
#include "normlab/normlab.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "normlab/gauge.hpp"
#include "normlab/scenarios.hpp"

struct nl_norm {
  normlab::NormHandle handle;
};

struct nl_report {
  normlab::ScenarioReport report;
};

namespace {

thread_local std::string last_error;

nl_status fail(nl_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body and maps exceptions to status codes.
template <class F>
nl_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return NL_OK;
  } catch (const normlab::Error& e) {
    return fail(static_cast<nl_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NL_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> copy(const double* p, std::size_t n) { return std::vector<double>(p, p + n); }

normlab::BaseKind to_base(nl_base base) {
  switch (base) {
    case NL_BASE_EUCLIDEAN: return normlab::BaseKind::kEuclidean;
    case NL_BASE_SUP: return normlab::BaseKind::kSup;
    case NL_BASE_ELL1: return normlab::BaseKind::kEll1;
  }
  normlab::raise(normlab::ErrorCode::kInvalidParameter, "unknown base kind");
}

normlab::EvalOptions eval_options(double tol) {
  normlab::EvalOptions opts;
  if (tol > 0.0) opts.tol = tol;
  return opts;
}

// Canonical system of a norm's space; only the dimension matters for it.
normlab::BiorthogonalSystem system_for(const normlab::NormHandle& h) {
  return normlab::canonical_system(normlab::AmbientSpec::make(h.dim(), normlab::BaseKind::kEuclidean));
}

nl_status wrap(normlab::NormHandle h, nl_norm** out) {
  *out = new nl_norm{std::move(h)};
  return NL_OK;
}

}  // namespace

#define NL_REQUIRE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) return fail(NL_ERR_NULL_ARGUMENT, "null argument: " #cond); \
  } while (0)

extern "C" {

const char* nl_version(void) { return "0.1.0"; }

const char* nl_last_error(void) { return last_error.c_str(); }

const char* nl_status_name(nl_status status) {
  if (status == NL_OK) return "ok";
  if (status == NL_ERR_NULL_ARGUMENT) return "null_argument";
  if (status >= NL_ERR_DIMENSION_MISMATCH && status <= NL_ERR_INTERNAL) {
    return normlab::to_string(static_cast<normlab::ErrorCode>(static_cast<int>(status)));
  }
  return "unknown";
}

void nl_string_free(char* s) { std::free(s); }

void nl_config_default(nl_config* cfg) {
  if (!cfg) return;
  const normlab::ScenarioConfig d;
  cfg->scenario = "draga";
  cfg->dim = d.dim;
  cfg->eps = d.eps;
  cfg->delta = -1.0;
  cfg->lambda = d.lambda;
  cfg->tol = -1.0;
  cfg->samples = d.samples;
  cfg->seed = d.seed;
}

size_t nl_scenario_count(void) { return normlab::scenario_names().size(); }

const char* nl_scenario_name(size_t index) {
  const auto& names = normlab::scenario_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

nl_status nl_norm_base(nl_base base, size_t dim, const double* weights, nl_norm** out) {
  NL_REQUIRE(out);
  return guarded([&] {
    std::vector<double> w = weights ? copy(weights, dim) : std::vector<double>{};
    wrap(normlab::base_norm(normlab::AmbientSpec::make(dim, to_base(base), std::move(w))), out);
  });
}

nl_status nl_norm_draga_base(const nl_norm* norm, nl_norm** out) {
  NL_REQUIRE(norm && out);
  return guarded([&] { wrap(normlab::draga_base(norm->handle, system_for(norm->handle)), out); });
}

nl_status nl_norm_quad_perturb(const nl_norm* norm, const double* weights, double scale, nl_norm** out) {
  NL_REQUIRE(norm && out);
  return guarded([&] {
    const auto sys = system_for(norm->handle);
    std::vector<double> w = weights ? copy(weights, sys.count()) : std::vector<double>{};
    wrap(normlab::quad_perturb(norm->handle, sys, std::move(w), scale), out);
  });
}

nl_status nl_norm_slice_restrict(const nl_norm* norm, const double* f, double c, nl_norm** out) {
  NL_REQUIRE(norm && f && out);
  return guarded([&] {
    const normlab::Functional g(copy(f, norm->handle.dim()));
    wrap(normlab::slice_restrict(norm->handle, g, c), out);
  });
}

nl_status nl_norm_mink_sum(const nl_norm* norm1, const nl_norm* norm, double eps, double tol,
                           nl_norm** out) {
  NL_REQUIRE(norm1 && norm && out);
  return guarded(
      [&] { wrap(normlab::mink_sum(norm1->handle, norm->handle, eps, eval_options(tol)), out); });
}

nl_status nl_norm_sq_infconv(const nl_norm* norm1, const nl_norm* norm, double eps, double tol,
                             nl_norm** out) {
  NL_REQUIRE(norm1 && norm && out);
  return guarded(
      [&] { wrap(normlab::sq_infconv(norm1->handle, norm->handle, eps, eval_options(tol)), out); });
}

nl_status nl_norm_quotient_t(size_t dim, double tol, nl_norm** out) {
  NL_REQUIRE(out);
  return guarded([&] {
    normlab::EvalOptions opts;
    opts.tol = tol > 0.0 ? tol : normlab::kNestedTol;
    wrap(normlab::quotient_T(normlab::AmbientSpec::make(dim, normlab::BaseKind::kEll1), opts), out);
  });
}

nl_status nl_norm_sum(const nl_norm* a, const nl_norm* b, nl_norm** out) {
  NL_REQUIRE(a && b && out);
  return guarded([&] { wrap(normlab::sum(a->handle, b->handle), out); });
}

nl_status nl_norm_scaled(const nl_norm* a, double t, nl_norm** out) {
  NL_REQUIRE(a && out);
  return guarded([&] { wrap(normlab::scaled(a->handle, t), out); });
}

void nl_norm_free(nl_norm* norm) { delete norm; }

size_t nl_norm_dim(const nl_norm* norm) { return norm ? norm->handle.dim() : 0; }

nl_status nl_norm_eval(const nl_norm* norm, const double* x, double* lower, double* upper) {
  NL_REQUIRE(norm && x && lower && upper);
  return guarded([&] {
    normlab::Bracket b;
    try {
      b = norm->handle.eval(std::span<const double>(x, norm->handle.dim()));
    } catch (const normlab::BracketTooWide& e) {
      *lower = e.best().lower;
      *upper = e.best().upper;
      throw;
    }
    *lower = b.lower;
    *upper = b.upper;
  });
}

nl_status nl_norm_dual_eval(const nl_norm* norm, const double* f, double tol, double* lower,
                            double* upper) {
  NL_REQUIRE(norm && f && lower && upper);
  return guarded([&] {
    const normlab::Functional g(copy(f, norm->handle.dim()));
    const normlab::Bracket b = normlab::dual_eval(norm->handle, g, tol);
    *lower = b.lower;
    *upper = b.upper;
  });
}

nl_status nl_scenario_run(const nl_config* cfg, nl_report** out) {
  NL_REQUIRE(cfg && cfg->scenario && out);
  return guarded([&] {
    normlab::ScenarioConfig c;
    c.name = cfg->scenario;
    c.dim = cfg->dim;
    c.eps = cfg->eps;
    if (cfg->delta >= 0.0) c.delta = cfg->delta;
    c.lambda = cfg->lambda;
    if (cfg->tol >= 0.0) c.tol = cfg->tol;
    c.samples = cfg->samples;
    c.seed = cfg->seed;
    *out = new nl_report{normlab::run_scenario(c)};
  });
}

void nl_report_free(nl_report* report) { delete report; }

size_t nl_report_check_count(const nl_report* report) { return report ? report->report.checks.size() : 0; }

size_t nl_report_failures(const nl_report* report) { return report ? report->report.failures() : 0; }

nl_status nl_report_check(const nl_report* report, size_t index, const char** name,
                          nl_check_status* status, double* value) {
  NL_REQUIRE(report && name && status && value);
  if (index >= report->report.checks.size()) {
    return fail(NL_ERR_INVALID_PARAMETER, "check index out of range");
  }
  const normlab::Check& c = report->report.checks[index];
  *name = c.name.c_str();
  *status = static_cast<nl_check_status>(static_cast<int>(c.status));
  if (c.bracket) {
    *value = c.bracket->mid();
  } else {
    *value = c.value ? *c.value : std::numeric_limits<double>::quiet_NaN();
  }
  last_error.clear();
  return NL_OK;
}

nl_status nl_report_json(const nl_report* report, int with_runtime, char** out) {
  NL_REQUIRE(report && out);
  return guarded([&] { *out = copy_string(normlab::to_json(report->report, with_runtime != 0)); });
}

nl_status nl_report_csv(const nl_report* report, char** out) {
  NL_REQUIRE(report && out);
  return guarded([&] { *out = copy_string(normlab::to_csv(report->report)); });
}

}  // extern "C"
