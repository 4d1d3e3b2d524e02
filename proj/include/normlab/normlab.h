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
#ifndef NORMLAB_NORMLAB_H_
#define NORMLAB_NORMLAB_H_

/*
 * C interface of libnormlab. Every function returns an nl_status; on failure
 * nl_last_error() describes the problem for the calling thread. Handles are
 * opaque and must be released with the matching *_free function. Strings
 * returned through char** are owned by the caller (nl_string_free).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(NORMLAB_BUILDING_LIBRARY)
#define NL_API __attribute__((visibility("default")))
#else
#define NL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nl_status {
  NL_OK = 0,
  NL_ERR_DIMENSION_MISMATCH = 1,
  NL_ERR_INVALID_PARAMETER = 2,
  NL_ERR_DEGENERATE_NORM = 3,
  NL_ERR_BRACKET_TOO_WIDE = 4,
  NL_ERR_PRECONDITION = 5,
  NL_ERR_NUMERICAL_INSTABILITY = 6,
  NL_ERR_CERTIFICATE_FAILURE = 7,
  NL_ERR_INTERNAL = 8,
  NL_ERR_NULL_ARGUMENT = 9
} nl_status;

typedef enum nl_base { NL_BASE_EUCLIDEAN = 0, NL_BASE_SUP = 1, NL_BASE_ELL1 = 2 } nl_base;

typedef enum nl_check_status { NL_CHECK_PASS = 0, NL_CHECK_FAIL = 1, NL_CHECK_SKIPPED = 2 } nl_check_status;

typedef struct nl_norm nl_norm;
typedef struct nl_report nl_report;

/* Scenario configuration. Negative delta / tol mean "scenario default". */
typedef struct nl_config {
  const char* scenario;
  size_t dim;
  double eps;
  double delta;
  double lambda;
  double tol;
  size_t samples;
  uint64_t seed;
} nl_config;

NL_API const char* nl_version(void);
NL_API const char* nl_last_error(void);
NL_API const char* nl_status_name(nl_status status);
NL_API void nl_string_free(char* s);

/* Fills cfg with the defaults: dim 16, eps 0.5, lambda 0.5, samples 1000, seed 42. */
NL_API void nl_config_default(nl_config* cfg);

NL_API size_t nl_scenario_count(void);
NL_API const char* nl_scenario_name(size_t index);

/* --- norms --------------------------------------------------------------- */

/* weights may be NULL (all ones). */
NL_API nl_status nl_norm_base(nl_base base, size_t dim, const double* weights, nl_norm** out);
/* Canonical coordinate system of the norm's space. */
NL_API nl_status nl_norm_draga_base(const nl_norm* norm, nl_norm** out);
/* weights may be NULL for the default 4^-(n+1). */
NL_API nl_status nl_norm_quad_perturb(const nl_norm* norm, const double* weights, double scale,
                                      nl_norm** out);
NL_API nl_status nl_norm_slice_restrict(const nl_norm* norm, const double* f, double c, nl_norm** out);
/* tol <= 0 picks the default evaluation tolerance. */
NL_API nl_status nl_norm_mink_sum(const nl_norm* norm1, const nl_norm* norm, double eps, double tol,
                                  nl_norm** out);
NL_API nl_status nl_norm_sq_infconv(const nl_norm* norm1, const nl_norm* norm, double eps, double tol,
                                    nl_norm** out);
NL_API nl_status nl_norm_quotient_t(size_t dim, double tol, nl_norm** out);
NL_API nl_status nl_norm_sum(const nl_norm* a, const nl_norm* b, nl_norm** out);
NL_API nl_status nl_norm_scaled(const nl_norm* a, double t, nl_norm** out);
NL_API void nl_norm_free(nl_norm* norm);

NL_API size_t nl_norm_dim(const nl_norm* norm);
/* Bracket [lower, upper] of the norm at x (length dim). */
NL_API nl_status nl_norm_eval(const nl_norm* norm, const double* x, double* lower, double* upper);
NL_API nl_status nl_norm_dual_eval(const nl_norm* norm, const double* f, double tol, double* lower,
                                   double* upper);

/* --- scenarios ----------------------------------------------------------- */

NL_API nl_status nl_scenario_run(const nl_config* cfg, nl_report** out);
NL_API void nl_report_free(nl_report* report);

NL_API size_t nl_report_check_count(const nl_report* report);
NL_API size_t nl_report_failures(const nl_report* report);
NL_API nl_status nl_report_check(const nl_report* report, size_t index, const char** name,
                                 nl_check_status* status, double* value);
/* with_runtime = 0 omits runtime_ms. */
NL_API nl_status nl_report_json(const nl_report* report, int with_runtime, char** out);
NL_API nl_status nl_report_csv(const nl_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif /* NORMLAB_NORMLAB_H_ */
