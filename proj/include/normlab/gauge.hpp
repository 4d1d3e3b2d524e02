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

// Norm constructors. A NormHandle is an immutable node of a construction DAG;
// every evaluation returns a Bracket. Closed-form kinds return degenerate
// brackets, optimization-defined kinds (Minkowski sum, squared infimal
// convolution, the l1 quotient) return a primal upper bound from an explicit
// splitting and a dual lower bound from an explicit functional.
//
// Handles are cheap to copy and safe to evaluate from many threads.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normlab/bracket.hpp"
#include "normlab/space.hpp"

namespace normlab {

enum class NormKind {
  kBase,
  kDragaBase,
  kQuadPerturb,
  kSliceRestrict,
  kMinkSum,
  kSqInfConv,
  kQuotientT,
  kSum,
  kScaled,
};

const char* to_string(NormKind kind);

inline constexpr double kClosedFormTol = 1e-6;
inline constexpr double kNestedTol = 1e-4;

struct EvalOptions {
  double tol = kClosedFormTol;  // maximal bracket width before kBracketTooWide
  // Skip the structured Euclidean fast paths and use the generic solver.
  bool force_generic = false;
  std::size_t budget = 100000;
  std::uint64_t seed = 0x6e6f726dULL;
};

// Quality of a dual-norm upper bound. kCheap uses only closed-form
// candidates; kFull also runs a local minimization over decompositions.
enum class DualEffort { kCheap, kFull };

// An explicit decomposition x = u + v realizing the primal upper bound of an
// infimal-convolution gauge.
struct Splitting {
  Vector u;
  Vector v;
  double value = 0.0;  // objective at (u, v), i.e. the certified upper bound
};

// The quadratic part sqrt(scale * sum_k w_k f_k(x)^2) of a quad_perturb root.
struct QuadraticPart {
  std::vector<Functional> functionals;
  std::vector<double> weights;
  double scale = 1.0;
};

namespace detail {
struct Node;
}

class NormHandle {
 public:
  explicit NormHandle(std::shared_ptr<const detail::Node> node);

  Bracket eval(const Vector& x) const;
  Bracket eval(std::span<const double> x) const;

  // Certified upper bound on the dual norm N^*(g) = sup { g(x) : N(x) <= 1 }.
  double dual_upper(const Functional& g, DualEffort effort = DualEffort::kFull) const;

  NormKind kind() const;
  std::size_t dim() const;
  double tol() const;
  const std::vector<NormHandle>& children() const;

  std::optional<QuadraticPart> quadratic_part() const;
  // Optimal splitting found for Minkowski-sum and squared inf-convolution
  // kinds; nullopt otherwise.
  std::optional<Splitting> best_splitting(const Vector& x) const;

  const detail::Node& node() const { return *node_; }

 private:
  std::shared_ptr<const detail::Node> node_;
};

// The ambient norm of `spec`: l2, l_inf or l1 of the weighted coordinates.
NormHandle base_norm(const AmbientSpec& spec);

// max( norm(x) / 2, max_n |f_n(x)| ).
NormHandle draga_base(const NormHandle& norm, const BiorthogonalSystem& sys);

// sqrt( norm(x)^2 + scale * sum_n w_n f_n(x)^2 ). Empty weights mean
// w_n = 4^-(n+1) for 0-based n, so the first functional carries weight 1/4.
NormHandle quad_perturb(const NormHandle& norm, const BiorthogonalSystem& sys,
                        std::vector<double> weights = {}, double scale = 1.0);

// The gauge of ball(norm) intersected with the slab |f| <= c, that is
// max( norm(x), |f(x)| / c ). For a norm-one f with norm-one maximizer and
// c = 1 - eps this is the ball with the two opposite slices of depth eps
// removed.
NormHandle slice_restrict(const NormHandle& norm, const Functional& f, double c);

// Gauge of B(norm1) + eps B(norm): inf over u + v = x of
// max( norm1(u), norm(v) / eps ). Dual norm: norm1^* + eps norm^*.
NormHandle mink_sum(const NormHandle& norm1, const NormHandle& norm, double eps,
                    const EvalOptions& options = {});

// sqrt( inf over u + v = x of norm1(u)^2 + norm(v)^2 / eps ). Dual norm:
// sqrt( (norm1^*)^2 + eps (norm^*)^2 ).
NormHandle sq_infconv(const NormHandle& norm1, const NormHandle& norm, double eps,
                      const EvalOptions& options = {});

// On an l1 truncation: inf over x = u + T y of max( |u|_1, |y|_2 ) with
// (T y)_n = y_n / 2^(n+1) (0-based n). Dual norm: |g|_inf + |T^* g|_2.
NormHandle quotient_T(const AmbientSpec& spec, const EvalOptions& options = {});

NormHandle sum(const NormHandle& norm1, const NormHandle& norm2);
NormHandle scaled(const NormHandle& norm, double t);

// Bracket for sup { f(x) : norm(x) <= 1 }. The upper end comes from the dual
// formula of the construction, the lower end from explicit feasible points
// refined by minimizing norm over the hyperplane f = 1. Throws BracketTooWide
// (carrying the best bracket) when the width exceeds tol.
Bracket dual_eval(const NormHandle& norm, const Functional& f, double tol);

// 4^-(n+1): default weight of the n-th (0-based) quadratic term.
double default_quad_weight(std::size_t n);

}  // namespace normlab
