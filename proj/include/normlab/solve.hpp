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

// Small dense convex minimization and finite-difference probes of norms.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "normlab/bracket.hpp"
#include "normlab/space.hpp"

namespace normlab {

using ConvexObjective = std::function<double(std::span<const double>)>;

struct SolveOptions {
  double tol = 1e-6;
  std::size_t budget = 100000;  // objective evaluations
  std::uint64_t seed = 0x6e6f726dULL;
  // Certified lower bound on the minimum, if the caller has one (typically a
  // dual value). Enables early exit once best - lower <= tol.
  std::optional<double> lower_bound;
  double initial_step = 0.0;  // 0 picks a scale from the start point
};

struct SolveReport {
  Bracket value;  // [lower_bound or 0, f(argmin)]
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  Vector argmin;
  std::optional<Functional> dual_witness;  // approximate subgradient at argmin
  bool converged = false;
};

// Minimizes a finite convex function that is nonnegative (all objectives here
// are norms or sums of squared norms). Subgradient descent with Polyak-type
// steps against an adaptive target level, followed by a derivative-free polish
// made of exact line searches along coordinate and random directions.
// Deterministic for a fixed seed and budget.
//
// `converged` means width <= tol when a lower bound was supplied, otherwise
// that the polish stagnated at the smallest step before the budget ran out.
SolveReport minimize_convex(const ConvexObjective& objective, const Vector& start,
                            const SolveOptions& options = {});

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
};

// Golden-section search for a convex (or unimodal) function on [a, b].
ScalarMinimum golden_section(const std::function<double(double)>& f, double a, double b,
                             int iterations = 200);

enum class Side { kLeft, kRight };

struct SweepOptions {
  double h0 = 1e-2;
  int levels = 10;  // steps h0 * 2^-k, k = 0..levels
  double monotone_tol = 1e-9;
};

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;              // |q_K - q_{K-1}|
  std::vector<double> quotients;  // q_k for k = 0..levels
};

// lim_{t -> 0+/-} (N(x + t d) - N(x)) / t from a geometric step sweep with a
// last-two Richardson extrapolation. Convexity makes the quotients monotone;
// a violation beyond monotone_tol (plus bracket noise) raises
// kNumericalInstability.
DerivativeEstimate one_sided_derivative(const NormHandle& norm, const Vector& x, const Vector& d,
                                        Side side, const SweepOptions& options = {});

// (N(x + h d) + N(x - h d) - 2 N(x)) / h.
double smoothness_defect(const NormHandle& norm, const Vector& x, const Vector& d, double h);

}  // namespace normlab
