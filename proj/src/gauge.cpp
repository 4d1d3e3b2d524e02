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
#include "normlab/gauge.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gauge_nodes.hpp"

namespace normlab {

namespace {

void require_same_dim(const NormHandle& a, std::size_t dim, const char* what) {
  if (a.dim() != dim) {
    raise(ErrorCode::kDimensionMismatch, std::string(what) + ": norm of dimension " +
                                             std::to_string(a.dim()) + " on space of dimension " +
                                             std::to_string(dim));
  }
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) raise(ErrorCode::kInvalidParameter, "eps must lie in (0, 1)");
}

void require_options(const EvalOptions& options) {
  if (!(options.tol > 0.0)) raise(ErrorCode::kInvalidParameter, "evaluation tol must be positive");
  if (options.budget < 1) raise(ErrorCode::kInvalidParameter, "evaluation budget must be positive");
}

std::string describe(const Bracket& b) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << b.lower << ", " << b.upper << "]";
  return os.str();
}

}  // namespace

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kBase: return "base";
    case NormKind::kDragaBase: return "draga_base";
    case NormKind::kQuadPerturb: return "quad_perturb";
    case NormKind::kSliceRestrict: return "slice_restrict";
    case NormKind::kMinkSum: return "mink_sum";
    case NormKind::kSqInfConv: return "sq_infconv";
    case NormKind::kQuotientT: return "quotient_T";
    case NormKind::kSum: return "sum";
    case NormKind::kScaled: return "scaled";
  }
  return "?";
}

double default_quad_weight(std::size_t n) { return std::ldexp(1.0, -2 * static_cast<int>(n + 1)); }

NormHandle::NormHandle(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {
  if (!node_) raise(ErrorCode::kInternal, "null norm node");
}

Bracket NormHandle::eval(const Vector& x) const { return eval(x.span()); }

Bracket NormHandle::eval(std::span<const double> x) const {
  if (x.size() != node_->dim) {
    raise(ErrorCode::kDimensionMismatch, "evaluating a norm of dimension " +
                                             std::to_string(node_->dim) + " at a vector of length " +
                                             std::to_string(x.size()));
  }
  Bracket b = node_->eval(x);
  if (!std::isfinite(b.lower) || !std::isfinite(b.upper)) {
    raise(ErrorCode::kNumericalInstability, "non-finite norm value");
  }
  if (b.width() > node_->tol) {
    throw BracketTooWide(std::string(to_string(node_->kind)) + " bracket " + describe(b) +
                             " wider than tol " + std::to_string(node_->tol),
                         b);
  }
  // Outward rounding; the node arithmetic itself is only good to a few ulps.
  const double pad = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(b.upper);
  b.lower = std::max(0.0, b.lower - pad);
  b.upper += pad;
  return b;
}

double NormHandle::dual_upper(const Functional& g, DualEffort effort) const {
  if (g.dim() != node_->dim) raise(ErrorCode::kDimensionMismatch, "dual bound dimension mismatch");
  return node_->dual_upper(g.span(), effort);
}

NormKind NormHandle::kind() const { return node_->kind; }
std::size_t NormHandle::dim() const { return node_->dim; }
double NormHandle::tol() const { return node_->tol; }
const std::vector<NormHandle>& NormHandle::children() const { return node_->children; }
std::optional<QuadraticPart> NormHandle::quadratic_part() const { return node_->quadratic_part(); }

std::optional<Splitting> NormHandle::best_splitting(const Vector& x) const {
  if (x.dim() != node_->dim) raise(ErrorCode::kDimensionMismatch, "splitting dimension mismatch");
  return node_->best_splitting(x.span());
}

NormHandle base_norm(const AmbientSpec& spec) {
  return NormHandle(detail::make_base(AmbientSpec::make(spec.dim, spec.base, spec.weights)));
}

NormHandle draga_base(const NormHandle& norm, const BiorthogonalSystem& sys) {
  require_same_dim(norm, sys.dim(), "draga_base");
  return NormHandle(detail::make_draga(norm, sys));
}

NormHandle quad_perturb(const NormHandle& norm, const BiorthogonalSystem& sys,
                        std::vector<double> weights, double scale) {
  require_same_dim(norm, sys.dim(), "quad_perturb");
  if (weights.empty()) {
    for (std::size_t n = 0; n < sys.count(); ++n) weights.push_back(default_quad_weight(n));
  }
  if (weights.size() != sys.count()) {
    raise(ErrorCode::kInvalidParameter, "quad_perturb needs one weight per system element");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      raise(ErrorCode::kInvalidParameter, "quad_perturb weights must be positive");
    }
  }
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    raise(ErrorCode::kInvalidParameter, "quad_perturb scale must be nonnegative");
  }
  return NormHandle(detail::make_quad(norm, sys, std::move(weights), scale));
}

NormHandle slice_restrict(const NormHandle& norm, const Functional& f, double c) {
  require_same_dim(norm, f.dim(), "slice_restrict");
  if (!(c > 0.0) || !std::isfinite(c)) raise(ErrorCode::kInvalidParameter, "slab level must be positive");
  if (euclidean_norm(f.span()) == 0.0) {
    raise(ErrorCode::kInvalidParameter, "slice functional must be nonzero");
  }
  return NormHandle(detail::make_slice(norm, f, c));
}

NormHandle mink_sum(const NormHandle& norm1, const NormHandle& norm, double eps,
                    const EvalOptions& options) {
  require_same_dim(norm, norm1.dim(), "mink_sum");
  require_eps(eps);
  require_options(options);
  return NormHandle(detail::make_mink(norm1, norm, eps, options));
}

NormHandle sq_infconv(const NormHandle& norm1, const NormHandle& norm, double eps,
                      const EvalOptions& options) {
  require_same_dim(norm, norm1.dim(), "sq_infconv");
  require_eps(eps);
  require_options(options);
  return NormHandle(detail::make_sq_infconv(norm1, norm, eps, options));
}

NormHandle quotient_T(const AmbientSpec& spec, const EvalOptions& options) {
  const AmbientSpec checked = AmbientSpec::make(spec.dim, spec.base, spec.weights);
  if (checked.base != BaseKind::kEll1 || !checked.unweighted()) {
    raise(ErrorCode::kPrecondition, "quotient_T lives on an unweighted l1 truncation");
  }
  require_options(options);
  return NormHandle(detail::make_quotient(checked, options));
}

NormHandle sum(const NormHandle& norm1, const NormHandle& norm2) {
  require_same_dim(norm2, norm1.dim(), "sum");
  return NormHandle(detail::make_sum(norm1, norm2));
}

NormHandle scaled(const NormHandle& norm, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) raise(ErrorCode::kInvalidParameter, "scale factor must be positive");
  return NormHandle(detail::make_scaled(norm, t));
}

Bracket dual_eval(const NormHandle& norm, const Functional& f, double tol) {
  if (f.dim() != norm.dim()) raise(ErrorCode::kDimensionMismatch, "dual_eval dimension mismatch");
  if (!(tol > 0.0)) raise(ErrorCode::kInvalidParameter, "dual_eval tol must be positive");
  const auto g = f.span();
  if (euclidean_norm(g) == 0.0) return Bracket::exact(0.0);
  const detail::Node& node = norm.node();
  const double upper = node.dual_upper(g, DualEffort::kFull);

  // Feasible points: the construction's own candidates and f itself.
  double lower = 0.0;
  detail::Point best;
  detail::best_unit_candidate(node, g, best, lower);
  {
    const detail::Point x(g.begin(), g.end());
    const double len = node.eval(x).upper;
    if (len > 0.0 && dot(g, x) / len > lower) {
      lower = dot(g, x) / len;
      best = x;
      for (double& v : best) v /= len;
    }
  }

  // Refinement: sup f / N = 1 / min { N(x) : f(x) = 1 }.
  if (upper - lower > tol) {
    detail::Point x0 = best;
    const double fx = dot(g, x0);
    for (double& v : x0) v /= fx;
    auto objective = [&](std::span<const double> x) { return node.eval(x).upper; };
    SolveOptions opts;
    opts.tol = 0.25 * tol / std::max(upper * upper, 1e-300);
    opts.lower_bound = 1.0 / upper;
    const SolveReport r = detail::minimize_on_hyperplane(objective, g, x0, opts);
    const double len = node.eval(r.argmin.span()).upper;
    if (len > 0.0) lower = std::max(lower, dot(g, r.argmin.span()) / len);
  }

  const Bracket out{std::min(lower, upper), upper};
  if (out.width() > tol) {
    throw BracketTooWide("dual bracket " + describe(out) + " wider than tol " + std::to_string(tol),
                         out);
  }
  return out;
}

}  // namespace normlab
