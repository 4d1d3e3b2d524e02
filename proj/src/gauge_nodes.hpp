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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "normlab/gauge.hpp"
#include "normlab/solve.hpp"

namespace normlab::detail {

using Point = std::vector<double>;

// Euclidean projection of p onto the unit ball of a norm, written to out.
using Projector = std::function<void(std::span<const double> p, std::span<double> out)>;

struct Node {
  Node(NormKind kind, std::size_t dim, double tol, std::vector<NormHandle> children)
      : kind(kind), dim(dim), tol(tol), children(std::move(children)) {}
  virtual ~Node() = default;

  // Bracket without the width check; NormHandle::eval adds the check.
  virtual Bracket eval(std::span<const double> x) const = 0;
  virtual double dual_upper(std::span<const double> g, DualEffort effort) const = 0;

  // Points x with a large ratio g(x) / N(x), seeding dual lower bounds. The
  // default collects the children's candidates.
  virtual void support_candidates(std::span<const double> g, std::vector<Point>& out) const;

  virtual std::optional<Projector> projector() const { return std::nullopt; }
  // m when this node is m times the unweighted Euclidean norm.
  virtual std::optional<double> euclidean_multiple() const { return std::nullopt; }
  virtual std::optional<QuadraticPart> quadratic_part() const { return std::nullopt; }
  virtual std::optional<Splitting> best_splitting(std::span<const double>) const {
    return std::nullopt;
  }

  const NormKind kind;
  const std::size_t dim;
  const double tol;
  const std::vector<NormHandle> children;
};

// Best candidate of `node` for g, rescaled to unit norm (upper bound), and the
// ratio g(x) / N(x) it achieves. Returns false if no candidate pairs
// positively with g.
bool best_unit_candidate(const Node& node, std::span<const double> g, Point& x, double& ratio);

// min over x in { a . x = a . x0 } of f(x), parametrized through the
// orthogonal projector onto a-perp; the report's argmin is in x coordinates.
SolveReport minimize_on_hyperplane(const ConvexObjective& f, std::span<const double> a,
                                   const Point& x0, const SolveOptions& options);

std::shared_ptr<const Node> make_base(const AmbientSpec& spec);
std::shared_ptr<const Node> make_draga(const NormHandle& norm, const BiorthogonalSystem& sys);
std::shared_ptr<const Node> make_quad(const NormHandle& norm, const BiorthogonalSystem& sys,
                                      std::vector<double> weights, double scale);
std::shared_ptr<const Node> make_slice(const NormHandle& norm, const Functional& f, double c);
std::shared_ptr<const Node> make_mink(const NormHandle& norm1, const NormHandle& norm, double eps,
                                      const EvalOptions& options);
std::shared_ptr<const Node> make_sq_infconv(const NormHandle& norm1, const NormHandle& norm,
                                            double eps, const EvalOptions& options);
std::shared_ptr<const Node> make_quotient(const AmbientSpec& spec, const EvalOptions& options);
std::shared_ptr<const Node> make_sum(const NormHandle& a, const NormHandle& b);
std::shared_ptr<const Node> make_scaled(const NormHandle& a, double t);

}  // namespace normlab::detail
