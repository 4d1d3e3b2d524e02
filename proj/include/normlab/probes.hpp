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

// Geometric property probes: witness sequences for MLUR failure, sampled
// rotundity / LUR / URED moduli, derivative scans and porosity certificates.
// All sampling is driven by an explicit 64-bit seed; scans run in parallel
// but their results do not depend on the thread count.

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "normlab/gauge.hpp"
#include "normlab/solve.hpp"

namespace normlab {

// Runs body(i) for i < count on a small thread pool. The first exception by
// index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Independent, reproducible stream seed derived from (seed, index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

// Gaussian vector of length dim.
Vector random_gaussian(std::mt19937_64& rng, std::size_t dim);

// x / N(x) using the bracket midpoint.
Vector normalized(const NormHandle& norm, const Vector& x);

struct WitnessRow {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double g = 0.0;
};

struct WitnessOptions {
  double gap = 0.0;           // required lower bound for g_n
  double tol = 1e-6;
  double envelope_cap = 8.0;  // largest acceptable C in a_n, b_n <= C 2^-n
  std::vector<int> indices;   // index n of each entry; empty means 1, 2, ...
};

// a_n = max(|N(x_n) - N(x)|, |N(y_n) - N(x)|), b_n = N((x_n + y_n)/2 - x),
// g_n = N(x_n - y_n).
struct WitnessReport {
  std::vector<WitnessRow> rows;
  std::vector<double> bound;  // envelope value per row
  double envelope_constant = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  bool envelope_ok = false;
  bool gap_ok = false;
  bool non_mlur = false;  // envelope_ok && gap_ok: the sequences certify failure of MLUR at x
};

WitnessReport mlur_witness_check(const NormHandle& norm, const Vector& x,
                                 const std::vector<Vector>& xs, const std::vector<Vector>& ys,
                                 const WitnessOptions& options);

struct LurOptions {
  std::size_t samples = 200;  // random directions besides the coordinate ones
  std::size_t refine = 8;     // best directions polished by local search
  std::uint64_t seed = 42;
};

struct LurGap {
  double value = std::numeric_limits<double>::infinity();
  Vector y;  // the unit vector realizing value
};

// Sampled upper bound on inf { 2N(x)^2 + 2N(y)^2 - N(x+y)^2 : N(y) = N(x),
// N(x - y) >= sep } for a unit x.
LurGap lur_gap_estimate(const NormHandle& norm, const Vector& x, double sep,
                        const LurOptions& options = {});

// min over random unit pairs of 1 - N((x + y) / 2).
double rotundity_scan(const NormHandle& norm, std::size_t samples, std::uint64_t seed);

struct GateauxScan {
  double max_discrepancy = 0.0;  // max_d right(d) - left(d)
  std::size_t worst = 0;         // index of the worst direction
  double left = 0.0;
  double right = 0.0;
};

GateauxScan gateaux_scan(const NormHandle& norm, const Vector& x, const std::vector<Vector>& directions,
                         const SweepOptions& options = {});

// max over pairs and k < k_max of
//   scale w_k f_k(x - y)^2 - (2N(x)^2 + 2N(y)^2 - N(x + y)^2),
// clamped at 0. Requires a quad_perturb root.
double wur_defect_check(const NormHandle& norm, const std::vector<std::pair<Vector, Vector>>& pairs,
                        std::size_t k_max);

// Sampled inf of 2N(x)^2 + 2N(y)^2 - N(x+y)^2 over x - y = z with
// max(N(x), N(y)) = 1. Requires 0 < N(z) < 2.
double ured_direction_modulus(const NormHandle& norm, const Vector& z, std::size_t samples,
                              std::uint64_t seed);

struct PorosityCertificate {
  Vector x;
  double delta = 0.0;
  int n_face = 0;  // 1-based face index
  int sign = 1;    // face { sign * x_n = ||x|| }
  Vector z;
  Vector w;
  double radius = 0.0;
  std::size_t samples_checked = 0;
  std::size_t violations = 0;
  double distance_wx = 0.0;  // ||w - x||
};

inline constexpr double kFaceMargin = 1e-9;

// Certificate on the sup sphere of `spec` for a unit x: w = delta sign e_n +
// (1 - delta) z, radius delta (1 - lambda) / 2, and ball_samples sphere points
// of that ball tested for exact membership in the interior of face n.
PorosityCertificate porosity_certificate(const AmbientSpec& spec, const Vector& x, double delta,
                                         double lambda, std::size_t ball_samples,
                                         std::uint64_t seed);

// For x in the interior of the face n0 of the sup sphere, v_N = eps e_m with
// m the first index > N other than n0. Rows hold, per N, a = max over the two
// signs of |N(x +- v_N)^2 - N(x)^2|, b = 0 and g = N(2 v_N); bound holds
// 2 (1 + eps)^2 sum_{n > N} 4^-n. Requires N <= dim - 2.
WitnessReport face_mlur_witness(const NormHandle& norm, const Vector& x, double eps,
                                const std::vector<int>& ns, double tol = 1e-9);

}  // namespace normlab
