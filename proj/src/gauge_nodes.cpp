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
#include "gauge_nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normlab::detail {

namespace {

bool is_zero(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

Point minus(std::span<const double> a, std::span<const double> b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point times(double t, std::span<const double> a) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = t * a[i];
  return out;
}

// Keeps a rounding-level inversion from producing lower > upper.
Bracket ordered(double lower, double upper) {
  lower = std::max(lower, 0.0);
  return {std::min(lower, upper), upper};
}

std::size_t polish_budget(std::size_t vars) { return std::min<std::size_t>(20000, 400 * vars + 200); }

// g - sum_n c_n a_n f_n
Point residual(std::span<const double> g, std::span<const double> c, const std::vector<double>& a,
               const std::vector<Functional>& f) {
  Point r(g.begin(), g.end());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double coef = c[n] * a[n];
    if (coef == 0.0) continue;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= coef * f[n][i];
  }
  return r;
}

// ---------------------------------------------------------------------------

class BaseNode final : public Node {
 public:
  explicit BaseNode(AmbientSpec spec)
      : Node(NormKind::kBase, spec.dim, kClosedFormTol, {}), spec_(std::move(spec)) {}

  Bracket eval(std::span<const double> x) const override {
    return Bracket::exact(base_value(spec_, x));
  }

  double dual_upper(std::span<const double> g, DualEffort) const override {
    return base_dual_value(spec_, g);
  }

  void support_candidates(std::span<const double> g, std::vector<Point>& out) const override {
    if (g.size() != dim || is_zero(g)) return;
    const auto& w = spec_.weights;
    Point x(dim, 0.0);
    switch (spec_.base) {
      case BaseKind::kEuclidean: {
        Point h(dim);
        for (std::size_t i = 0; i < dim; ++i) h[i] = g[i] / w[i];
        const double len = euclidean_norm(h);
        for (std::size_t i = 0; i < dim; ++i) x[i] = h[i] / (w[i] * len);
        break;
      }
      case BaseKind::kSup:
        for (std::size_t i = 0; i < dim; ++i) x[i] = sign_of(g[i]) / w[i];
        break;
      case BaseKind::kEll1: {
        std::size_t m = 0;
        for (std::size_t i = 1; i < dim; ++i) {
          if (std::abs(g[i]) / w[i] > std::abs(g[m]) / w[m]) m = i;
        }
        x[m] = sign_of(g[m]) / w[m];
        break;
      }
    }
    out.push_back(std::move(x));
  }

  std::optional<Projector> projector() const override {
    if (!euclidean_multiple()) return std::nullopt;
    return Projector([](std::span<const double> p, std::span<double> q) {
      const double len = euclidean_norm(p);
      const double s = len > 1.0 ? 1.0 / len : 1.0;
      for (std::size_t i = 0; i < p.size(); ++i) q[i] = s * p[i];
    });
  }

  std::optional<double> euclidean_multiple() const override {
    if (spec_.base == BaseKind::kEuclidean && spec_.unweighted()) return 1.0;
    return std::nullopt;
  }

 private:
  AmbientSpec spec_;
};

// ---------------------------------------------------------------------------

class DragaNode final : public Node {
 public:
  DragaNode(const NormHandle& norm, const BiorthogonalSystem& sys)
      : Node(NormKind::kDragaBase, norm.dim(), norm.tol(), {norm}),
        sys_(sys),
        ones_(sys.count(), 1.0) {}

  Bracket eval(std::span<const double> x) const override {
    const Bracket b = children[0].node().eval(x);
    double m = 0.0;
    for (const auto& f : sys_.functionals()) m = std::max(m, std::abs(dot(f.span(), x)));
    return {std::max(0.5 * b.lower, m), std::max(0.5 * b.upper, m)};
  }

  // The unit ball is B(norm)/... intersected with the slabs |f_n| <= 1, so the
  // dual norm is inf over g = g0 + sum c_n f_n of 2 norm^*(g0) + sum |c_n|.
  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    const Node& child = children[0].node();
    auto cost = [&](std::span<const double> c) {
      const Point r = residual(g, c, ones_, sys_.functionals());
      double s = 0.0;
      for (double v : c) s += std::abs(v);
      return 2.0 * child.dual_upper(r, DualEffort::kCheap) + s;
    };
    const Point zero(sys_.count(), 0.0);
    Point coef = sys_.coefficients(g);
    double best = std::min(cost(zero), cost(coef));
    Point start = cost(coef) <= cost(zero) ? coef : zero;
    if (effort == DualEffort::kFull && !start.empty()) {
      SolveOptions opts;
      opts.budget = polish_budget(start.size());
      opts.tol = 1e-12;
      const SolveReport r = minimize_convex(cost, Vector(start), opts);
      best = std::min(best, r.value.upper);
    }
    return best;
  }

  void support_candidates(std::span<const double> g, std::vector<Point>& out) const override {
    Node::support_candidates(g, out);
    for (const auto& e : sys_.vectors()) {
      const double s = sign_of(dot(g, e.span()));
      if (s != 0.0) out.push_back(times(s, e.span()));
    }
  }

 private:
  BiorthogonalSystem sys_;
  std::vector<double> ones_;
};

// ---------------------------------------------------------------------------

class QuadNode final : public Node {
 public:
  QuadNode(const NormHandle& norm, const BiorthogonalSystem& sys, std::vector<double> weights,
           double scale)
      : Node(NormKind::kQuadPerturb, norm.dim(), norm.tol(), {norm}),
        sys_(sys),
        weights_(std::move(weights)),
        scale_(scale) {
    amplitudes_.resize(weights_.size());
    for (std::size_t n = 0; n < weights_.size(); ++n) amplitudes_[n] = std::sqrt(scale_ * weights_[n]);
  }

  double quad(std::span<const double> x) const {
    double q = 0.0;
    for (std::size_t n = 0; n < weights_.size(); ++n) {
      const double fx = dot(sys_.f(n).span(), x);
      q += weights_[n] * fx * fx;
    }
    return scale_ * q;
  }

  Bracket eval(std::span<const double> x) const override {
    const Bracket b = children[0].node().eval(x);
    const double q = quad(x);
    return {std::sqrt(b.lower * b.lower + q), std::sqrt(b.upper * b.upper + q)};
  }

  // inf over g = g0 + sum c_n a_n f_n of sqrt( norm^*(g0)^2 + |c|^2 ),
  // a_n = sqrt(scale w_n).
  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    const Node& child = children[0].node();
    double best = child.dual_upper(g, DualEffort::kCheap);
    if (effort == DualEffort::kFull && scale_ > 0.0 && !weights_.empty()) {
      auto cost = [&](std::span<const double> c) {
        const Point r = residual(g, c, amplitudes_, sys_.functionals());
        const double d = child.dual_upper(r, DualEffort::kCheap);
        double s = d * d;
        for (double v : c) s += v * v;
        return std::sqrt(s);
      };
      SolveOptions opts;
      opts.budget = polish_budget(weights_.size());
      opts.tol = 1e-12;
      const SolveReport r = minimize_convex(cost, Vector(weights_.size()), opts);
      best = std::min(best, r.value.upper);
    }
    return best;
  }

  std::optional<QuadraticPart> quadratic_part() const override {
    return QuadraticPart{sys_.functionals(), weights_, scale_};
  }

 private:
  BiorthogonalSystem sys_;
  std::vector<double> weights_;
  std::vector<double> amplitudes_;
  double scale_;
};

// ---------------------------------------------------------------------------

class SliceNode final : public Node {
 public:
  SliceNode(const NormHandle& norm, const Functional& f, double c)
      : Node(NormKind::kSliceRestrict, norm.dim(), norm.tol(), {norm}), f_(f.coords()), c_(c) {
    const double len = euclidean_norm(f_);
    unit_f_ = times(1.0 / len, f_);
    c_unit_ = c_ / len;
  }

  Bracket eval(std::span<const double> x) const override {
    const Bracket b = children[0].node().eval(x);
    const double s = std::abs(dot(f_, x)) / c_;
    return {std::max(b.lower, s), std::max(b.upper, s)};
  }

  // inf over s of norm^*(g - s f) + c |s|.
  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    const Node& child = children[0].node();
    if (const auto m = child.euclidean_multiple()) return euclidean_dual(g, *m);
    auto cost = [&](double s) {
      Point r(g.begin(), g.end());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= s * f_[i];
      return child.dual_upper(r, effort == DualEffort::kFull ? DualEffort::kCheap : effort) +
             c_ * std::abs(s);
    };
    const double at_zero = cost(0.0);
    const double range = at_zero / c_;
    if (!(range > 0.0)) return at_zero;
    const ScalarMinimum m = golden_section(cost, -range, range, 120);
    return std::min(at_zero, m.value);
  }

  void support_candidates(std::span<const double> g, std::vector<Point>& out) const override {
    Node::support_candidates(g, out);
    const auto m = children[0].node().euclidean_multiple();
    if (!m || is_zero(g)) return;
    const double radius = 1.0 / *m;
    const double a = dot(unit_f_, g);
    Point perp(g.begin(), g.end());
    for (std::size_t i = 0; i < dim; ++i) perp[i] -= a * unit_f_[i];
    const double glen = euclidean_norm(g);
    if (radius * std::abs(a) / glen <= c_unit_ || c_unit_ >= radius) {
      out.push_back(times(radius / glen, g));
      return;
    }
    const double rho = euclidean_norm(perp);
    const double side = std::sqrt(radius * radius - c_unit_ * c_unit_);
    Point x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = sign_of(a) * c_unit_ * unit_f_[i] + (rho > 0.0 ? side * perp[i] / rho : 0.0);
    }
    out.push_back(std::move(x));
  }

  // Projection onto { |q|_2 <= R } cut by the slab |f.q| <= c.
  std::optional<Projector> projector() const override {
    const auto m = children[0].node().euclidean_multiple();
    if (!m) return std::nullopt;
    const double radius = 1.0 / *m;
    const Point fhat = unit_f_;
    const double cap = c_unit_;
    return Projector([radius, fhat, cap](std::span<const double> p, std::span<double> q) {
      const std::size_t n = p.size();
      const double len = euclidean_norm(p);
      const double a = dot(fhat, p);
      if (len <= radius && std::abs(a) <= cap) {
        std::copy(p.begin(), p.end(), q.begin());
        return;
      }
      if (len > radius && radius * std::abs(a) / len <= cap) {
        for (std::size_t i = 0; i < n; ++i) q[i] = p[i] * radius / len;
        return;
      }
      const double clipped = std::clamp(a, -cap, cap);
      double perp_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = p[i] - a * fhat[i];
        perp_sq += v * v;
      }
      if (clipped * clipped + perp_sq <= radius * radius) {
        for (std::size_t i = 0; i < n; ++i) q[i] = p[i] + (clipped - a) * fhat[i];
        return;
      }
      const double rho = std::sqrt(perp_sq);
      const double side = std::sqrt(std::max(radius * radius - cap * cap, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        const double v = p[i] - a * fhat[i];
        q[i] = clipped * fhat[i] + (rho > 0.0 ? side * v / rho : 0.0);
      }
    });
  }

 private:
  // Closed form of min_s |g - s f|_2 / m' + c |s| with m' the Euclidean
  // multiple, written in the coordinates a = fhat.g, r = |g_perp|.
  double euclidean_dual(std::span<const double> g, double m) const {
    const double a = std::abs(dot(unit_f_, g));
    double perp_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double v = g[i] - dot(unit_f_, g) * unit_f_[i];
      perp_sq += v * v;
    }
    const double r = std::sqrt(perp_sq);
    // value(sigma) = sqrt((a - sigma)^2 + r^2) / m + c_unit sigma, sigma in [0, a]
    const double kappa = m * c_unit_;
    double sigma = 0.0;
    if (kappa < 1.0) sigma = std::max(0.0, a - kappa * r / std::sqrt(1.0 - kappa * kappa));
    const double rest = a - sigma;
    return std::sqrt(rest * rest + r * r) / m + c_unit_ * sigma;
  }

  Point f_;
  double c_;
  Point unit_f_;
  double c_unit_;
};

// ---------------------------------------------------------------------------

// Shared pieces of the two infimal-convolution gauges.
class InfConvNode : public Node {
 public:
  InfConvNode(NormKind kind, const NormHandle& norm1, const NormHandle& norm, double eps,
              const EvalOptions& options)
      : Node(kind, norm1.dim(), std::max(options.tol, std::max(norm1.tol(), norm.tol())),
             {norm1, norm}),
        eps_(eps),
        options_(options) {
    if (!options.force_generic) {
      projector_ = norm1.node().projector();
      multiple_ = norm.node().euclidean_multiple();
    }
  }

  bool structured() const { return projector_.has_value() && multiple_.has_value(); }

  // |x/t - proj_K(x/t)|_2 with the projection written to q.
  double distance(std::span<const double> x, double t, Point& q) const {
    const Point p = times(1.0 / t, x);
    q.resize(p.size());
    (*projector_)(p, q);
    return euclidean_norm(minus(p, q));
  }

  const Node& first() const { return children[0].node(); }
  const Node& second() const { return children[1].node(); }

  SolveOptions solve_options(std::size_t budget) const {
    SolveOptions opts;
    opts.tol = 0.25 * options_.tol;
    opts.budget = budget;
    opts.seed = options_.seed;
    return opts;
  }

 protected:
  double eps_;
  EvalOptions options_;
  std::optional<Projector> projector_;
  std::optional<double> multiple_;
};

class MinkNode final : public InfConvNode {
 public:
  MinkNode(const NormHandle& norm1, const NormHandle& norm, double eps, const EvalOptions& options)
      : InfConvNode(NormKind::kMinkSum, norm1, norm, eps, options) {}

  Bracket eval(std::span<const double> x) const override {
    if (is_zero(x)) return Bracket::exact(0.0);
    return solve(x).first;
  }

  std::optional<Splitting> best_splitting(std::span<const double> x) const override {
    if (is_zero(x)) return Splitting{Vector(dim), Vector(dim), 0.0};
    return solve(x).second;
  }

  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    return first().dual_upper(g, effort) + eps_ * second().dual_upper(g, effort);
  }

  void support_candidates(std::span<const double> g, std::vector<Point>& out) const override {
    Point x1, x2;
    double r1 = 0.0, r2 = 0.0;
    const bool ok1 = best_unit_candidate(first(), g, x1, r1);
    const bool ok2 = best_unit_candidate(second(), g, x2, r2);
    if (ok1 && ok2) {
      for (std::size_t i = 0; i < dim; ++i) x1[i] += eps_ * x2[i];
      out.push_back(std::move(x1));
    } else if (ok1) {
      out.push_back(std::move(x1));
    } else if (ok2) {
      out.push_back(std::move(x2));
    }
  }

 private:
  double objective(std::span<const double> u, std::span<const double> v) const {
    return std::max(first().eval(u).upper, second().eval(v).upper / eps_);
  }

  double dual_ratio(std::span<const double> g, std::span<const double> x) const {
    const double num = dot(g, x);
    if (!(num > 0.0)) return 0.0;
    return num / dual_upper(g, DualEffort::kCheap);
  }

  std::pair<Bracket, Splitting> solve(std::span<const double> x) const {
    return structured() ? solve_structured(x) : solve_generic(x);
  }

  // The unit ball of the gauge is { p : dist_2(p, K) <= eps / m } with K the
  // unit ball of norm1, so the gauge is the smallest t with x/t in it.
  std::pair<Bracket, Splitting> solve_structured(std::span<const double> x) const {
    const double radius = eps_ / *multiple_;
    Point q;
    double hi = first().eval(x).upper;
    double lo = 0.0;
    for (int k = 0; k < 400 && hi - lo > 2e-16 * hi; ++k) {
      const double t = 0.5 * (lo + hi);
      if (distance(x, t, q) <= radius) {
        hi = t;
      } else {
        lo = t;
      }
    }
    distance(x, hi, q);
    const Point u = times(hi, q);
    const Point v = minus(x, u);
    const double upper = objective(u, v);

    double lower = dual_ratio(x, x);
    for (double t : {lo, hi}) {
      if (!(t > 0.0)) continue;
      distance(x, t, q);
      lower = std::max(lower, dual_ratio(minus(times(1.0 / t, x), q), x));
    }
    return {ordered(lower, upper), Splitting{Vector(u), Vector(v), upper}};
  }

  std::pair<Bracket, Splitting> solve_generic(std::span<const double> x) const {
    // Dual side: minimize the dual norm over the hyperplane g(x) = 1.
    auto dual_obj = [&](std::span<const double> g) { return dual_upper(g, DualEffort::kCheap); };
    const double xx = dot(x, x);
    const Point g0 = times(1.0 / xx, x);
    const SolveReport dual = minimize_on_hyperplane(dual_obj, x, g0, solve_options(options_.budget / 2));
    const double lower = dual_ratio(dual.argmin.span(), x);

    // Primal side: minimize over v with u = x - v.
    const Point xp(x.begin(), x.end());
    auto primal_obj = [&](std::span<const double> v) { return objective(minus(xp, v), v); };
    SolveOptions opts = solve_options(options_.budget / 2);
    opts.lower_bound = lower;
    const SolveReport primal =
        minimize_convex(primal_obj, Vector(times(eps_ / (1.0 + eps_), x)), opts);
    const Point v = primal.argmin.coords();
    const Point u = minus(x, v);
    const double upper = objective(u, v);
    return {ordered(lower, upper), Splitting{Vector(u), Vector(v), upper}};
  }
};

// ---------------------------------------------------------------------------

class SqInfConvNode final : public InfConvNode {
 public:
  SqInfConvNode(const NormHandle& norm1, const NormHandle& norm, double eps,
                const EvalOptions& options)
      : InfConvNode(NormKind::kSqInfConv, norm1, norm, eps, options) {}

  Bracket eval(std::span<const double> x) const override {
    if (is_zero(x)) return Bracket::exact(0.0);
    return solve(x).first;
  }

  std::optional<Splitting> best_splitting(std::span<const double> x) const override {
    if (is_zero(x)) return Splitting{Vector(dim), Vector(dim), 0.0};
    return solve(x).second;
  }

  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    const double a = first().dual_upper(g, effort);
    const double b = second().dual_upper(g, effort);
    return std::sqrt(a * a + eps_ * b * b);
  }

  void support_candidates(std::span<const double> g, std::vector<Point>& out) const override {
    Point x1, x2;
    double h1 = 0.0, h2 = 0.0;
    const bool ok1 = best_unit_candidate(first(), g, x1, h1);
    const bool ok2 = best_unit_candidate(second(), g, x2, h2);
    if (!ok1 && !ok2) return;
    if (!ok1) h1 = 0.0, x1.assign(dim, 0.0);
    if (!ok2) h2 = 0.0, x2.assign(dim, 0.0);
    // u = (h1/D) x1, v = (eps h2/D) x2 gives |u|_1^2 + |v|^2/eps <= 1 and
    // g(u + v) = D.
    const double d = std::sqrt(h1 * h1 + eps_ * h2 * h2);
    Point x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = (h1 * x1[i] + eps_ * h2 * x2[i]) / d;
    out.push_back(std::move(x));
  }

 private:
  double objective_sq(std::span<const double> u, std::span<const double> v) const {
    const double a = first().eval(u).upper;
    const double b = second().eval(v).upper;
    return a * a + b * b / eps_;
  }

  double dual_ratio(std::span<const double> g, std::span<const double> x) const {
    const double num = dot(g, x);
    if (!(num > 0.0)) return 0.0;
    return num / dual_upper(g, DualEffort::kCheap);
  }

  std::pair<Bracket, Splitting> solve(std::span<const double> x) const {
    return structured() ? solve_structured(x) : solve_generic(x);
  }

  // inf over t >= 0 of t^2 + m^2 dist_2(x, tK)^2 / eps, a convex function of t.
  std::pair<Bracket, Splitting> solve_structured(std::span<const double> x) const {
    const double m = *multiple_;
    const double xlen = euclidean_norm(x);
    Point q;
    auto phi = [&](double t) {
      if (!(t > 0.0)) return m * m * xlen * xlen / eps_;
      const double d = t * distance(x, t, q);
      return t * t + m * m * d * d / eps_;
    };
    const double top = first().eval(x).upper;
    const ScalarMinimum best = golden_section(phi, 0.0, top, 400);
    Point u(dim, 0.0);
    if (best.argmin > 0.0) {
      distance(x, best.argmin, q);
      u = times(best.argmin, q);
    }
    const Point v = minus(x, u);
    const double upper = std::sqrt(objective_sq(u, v));
    double lower = dual_ratio(x, x);
    if (!is_zero(v)) lower = std::max(lower, dual_ratio(v, x));
    return {ordered(lower, upper), Splitting{Vector(u), Vector(v), upper}};
  }

  std::pair<Bracket, Splitting> solve_generic(std::span<const double> x) const {
    auto dual_obj = [&](std::span<const double> g) { return dual_upper(g, DualEffort::kCheap); };
    const double xx = dot(x, x);
    const SolveReport dual =
        minimize_on_hyperplane(dual_obj, x, times(1.0 / xx, x), solve_options(options_.budget / 2));
    double lower = std::max(dual_ratio(dual.argmin.span(), x), dual_ratio(x, x));

    const Point xp(x.begin(), x.end());
    auto primal_obj = [&](std::span<const double> v) { return objective_sq(minus(xp, v), v); };
    SolveOptions opts = solve_options(options_.budget / 2);
    opts.lower_bound = lower * lower;
    opts.tol = 0.25 * options_.tol * std::max(lower, 1e-300);
    const SolveReport primal =
        minimize_convex(primal_obj, Vector(times(eps_ / (1.0 + eps_), x)), opts);
    const Point v = primal.argmin.coords();
    const Point u = minus(x, v);
    const double upper = std::sqrt(objective_sq(u, v));
    return {ordered(lower, upper), Splitting{Vector(u), Vector(v), upper}};
  }
};

// ---------------------------------------------------------------------------

class QuotientNode final : public Node {
 public:
  QuotientNode(const AmbientSpec& spec, const EvalOptions& options)
      : Node(NormKind::kQuotientT, spec.dim, options.tol, {}), options_(options) {
    shrink_.resize(dim);
    for (std::size_t n = 0; n < dim; ++n) shrink_[n] = std::ldexp(1.0, -static_cast<int>(n + 1));
  }

  Bracket eval(std::span<const double> x) const override {
    if (x.size() != dim) raise(ErrorCode::kDimensionMismatch, "quotient norm dimension mismatch");
    if (is_zero(x)) return Bracket::exact(0.0);
    return options_.force_generic ? eval_generic(x) : eval_structured(x);
  }

  double dual_upper(std::span<const double> g, DualEffort) const override {
    double sup = 0.0;
    for (double v : g) sup = std::max(sup, std::abs(v));
    return sup + euclidean_norm(adjoint(g));
  }

  void support_candidates(std::span<const double> g, std::vector<Point>& out) const override {
    if (is_zero(g)) return;
    std::size_t m = 0;
    for (std::size_t i = 1; i < dim; ++i) {
      if (std::abs(g[i]) > std::abs(g[m])) m = i;
    }
    const Point ty = adjoint(g);
    const double len = euclidean_norm(ty);
    Point x(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) x[i] = shrink_[i] * ty[i] / len;
    x[m] += sign_of(g[m]);
    out.push_back(std::move(x));
  }

 private:
  // T^* g has the same diagonal form as T.
  Point adjoint(std::span<const double> g) const {
    Point out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = shrink_[i] * g[i];
    return out;
  }

  double objective(std::span<const double> x, std::span<const double> y) const {
    double l1 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) l1 += std::abs(x[i] - shrink_[i] * y[i]);
    return std::max(l1, euclidean_norm(y));
  }

  double ratio(std::span<const double> g, std::span<const double> x) const {
    const double num = dot(g, x);
    return num > 0.0 ? num / dual_upper(g, DualEffort::kCheap) : 0.0;
  }

  // Minimizer of sum |x_n - s_n y_n| + (nu/2) |y|^2, coordinatewise.
  Point y_of(std::span<const double> x, double nu) const {
    Point y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] = sign_of(x[i]) * std::min(std::abs(x[i]) / shrink_[i], shrink_[i] / nu);
    }
    return y;
  }

  // Matching dual functional: sign(x_n) where y_n is interior, nu x_n / s_n^2
  // where the coordinate is fully absorbed by T y.
  Point g_of(std::span<const double> x, double nu) const {
    Point g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      g[i] = sign_of(x[i]) * std::min(1.0, nu * std::abs(x[i]) / (shrink_[i] * shrink_[i]));
    }
    return g;
  }

  // |x - T y(nu)|_1 - |y(nu)|_2 is increasing in nu; its root balances the max.
  Bracket eval_structured(std::span<const double> x) const {
    auto excess = [&](double nu) {
      const Point y = y_of(x, nu);
      double l1 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) l1 += std::abs(x[i] - shrink_[i] * y[i]);
      return l1 - euclidean_norm(y);
    };
    double lo = 1.0, hi = 1.0;
    while (excess(lo) > 0.0 && lo > 1e-300) lo *= 0.25;
    while (excess(hi) < 0.0 && hi < 1e300) hi *= 4.0;
    for (int k = 0; k < 400 && hi > lo * (1.0 + 1e-15); ++k) {
      const double mid = std::sqrt(lo * hi);
      if (excess(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    double upper = std::numeric_limits<double>::infinity();
    double lower = 0.0;
    for (double nu : {lo, hi}) {
      upper = std::min(upper, objective(x, y_of(x, nu)));
      lower = std::max(lower, ratio(g_of(x, nu), x));
    }
    return ordered(lower, upper);
  }

  Bracket eval_generic(std::span<const double> x) const {
    auto dual_obj = [&](std::span<const double> g) { return dual_upper(g, DualEffort::kCheap); };
    SolveOptions opts;
    opts.tol = 0.25 * options_.tol;
    opts.budget = options_.budget / 2;
    opts.seed = options_.seed;
    const double xx = dot(x, x);
    const SolveReport dual = minimize_on_hyperplane(dual_obj, x, times(1.0 / xx, x), opts);
    const double lower = ratio(dual.argmin.span(), x);
    const Point xp(x.begin(), x.end());
    auto primal_obj = [&](std::span<const double> y) { return objective(xp, y); };
    opts.lower_bound = lower;
    const SolveReport primal = minimize_convex(primal_obj, Vector(dim), opts);
    return ordered(lower, objective(x, primal.argmin.span()));
  }

  EvalOptions options_;
  std::vector<double> shrink_;
};

// ---------------------------------------------------------------------------

class SumNode final : public Node {
 public:
  SumNode(const NormHandle& a, const NormHandle& b)
      : Node(NormKind::kSum, a.dim(), std::max(kClosedFormTol, std::max(a.tol(), b.tol())), {a, b}) {}

  Bracket eval(std::span<const double> x) const override {
    return children[0].node().eval(x) + children[1].node().eval(x);
  }

  // inf over g = g1 + g2 of max(a^*(g1), b^*(g2)); the split g1 = theta g with
  // theta = B / (A + B) gives A B / (A + B).
  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    const Node& a = children[0].node();
    const Node& b = children[1].node();
    const double da = a.dual_upper(g, DualEffort::kCheap);
    const double db = b.dual_upper(g, DualEffort::kCheap);
    if (da + db == 0.0) return 0.0;
    double best = da * db / (da + db);
    if (effort == DualEffort::kFull) {
      const Point gp(g.begin(), g.end());
      auto cost = [&](std::span<const double> g1) {
        return std::max(a.dual_upper(g1, DualEffort::kCheap),
                        b.dual_upper(minus(gp, g1), DualEffort::kCheap));
      };
      SolveOptions opts;
      opts.budget = polish_budget(dim);
      opts.tol = 1e-12;
      const SolveReport r = minimize_convex(cost, Vector(times(db / (da + db), g)), opts);
      best = std::min(best, r.value.upper);
    }
    return best;
  }
};

class ScaledNode final : public Node {
 public:
  ScaledNode(const NormHandle& a, double t)
      : Node(NormKind::kScaled, a.dim(), a.tol(), {a}), t_(t) {}

  Bracket eval(std::span<const double> x) const override {
    return children[0].node().eval(x).scaled(t_);
  }

  double dual_upper(std::span<const double> g, DualEffort effort) const override {
    return children[0].node().dual_upper(g, effort) / t_;
  }

  std::optional<Projector> projector() const override {
    auto inner = children[0].node().projector();
    if (!inner) return std::nullopt;
    const double t = t_;
    return Projector([inner = std::move(*inner), t](std::span<const double> p, std::span<double> q) {
      Point scaled_p = times(t, p);
      inner(scaled_p, q);
      for (double& v : q) v /= t;
    });
  }

  std::optional<double> euclidean_multiple() const override {
    const auto m = children[0].node().euclidean_multiple();
    if (!m) return std::nullopt;
    return t_ * *m;
  }

 private:
  double t_;
};

}  // namespace

// ---------------------------------------------------------------------------

void Node::support_candidates(std::span<const double> g, std::vector<Point>& out) const {
  for (const auto& c : children) c.node().support_candidates(g, out);
}

bool best_unit_candidate(const Node& node, std::span<const double> g, Point& x, double& ratio) {
  std::vector<Point> cands;
  node.support_candidates(g, cands);
  bool found = false;
  for (auto& c : cands) {
    const double len = node.eval(c).upper;
    if (!(len > 0.0)) continue;
    const double r = dot(g, c) / len;
    if (r > 0.0 && (!found || r > ratio)) {
      found = true;
      ratio = r;
      x = times(1.0 / len, c);
    }
  }
  return found;
}

SolveReport minimize_on_hyperplane(const ConvexObjective& f, std::span<const double> a,
                                   const Point& x0, const SolveOptions& options) {
  const Point normal(a.begin(), a.end());
  const double aa = dot(normal, normal);
  auto lift = [&](std::span<const double> z) {
    Point x = x0;
    const double s = dot(normal, z) / aa;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += z[i] - s * normal[i];
    return x;
  };
  auto wrapped = [&](std::span<const double> z) { return f(lift(z)); };
  SolveReport r = minimize_convex(wrapped, Vector(x0.size()), options);
  r.argmin = Vector(lift(r.argmin.span()));
  return r;
}

std::shared_ptr<const Node> make_base(const AmbientSpec& spec) {
  return std::make_shared<BaseNode>(spec);
}
std::shared_ptr<const Node> make_draga(const NormHandle& norm, const BiorthogonalSystem& sys) {
  return std::make_shared<DragaNode>(norm, sys);
}
std::shared_ptr<const Node> make_quad(const NormHandle& norm, const BiorthogonalSystem& sys,
                                      std::vector<double> weights, double scale) {
  return std::make_shared<QuadNode>(norm, sys, std::move(weights), scale);
}
std::shared_ptr<const Node> make_slice(const NormHandle& norm, const Functional& f, double c) {
  return std::make_shared<SliceNode>(norm, f, c);
}
std::shared_ptr<const Node> make_mink(const NormHandle& norm1, const NormHandle& norm, double eps,
                                      const EvalOptions& options) {
  return std::make_shared<MinkNode>(norm1, norm, eps, options);
}
std::shared_ptr<const Node> make_sq_infconv(const NormHandle& norm1, const NormHandle& norm,
                                            double eps, const EvalOptions& options) {
  return std::make_shared<SqInfConvNode>(norm1, norm, eps, options);
}
std::shared_ptr<const Node> make_quotient(const AmbientSpec& spec, const EvalOptions& options) {
  return std::make_shared<QuotientNode>(spec, options);
}
std::shared_ptr<const Node> make_sum(const NormHandle& a, const NormHandle& b) {
  return std::make_shared<SumNode>(a, b);
}
std::shared_ptr<const Node> make_scaled(const NormHandle& a, double t) {
  return std::make_shared<ScaledNode>(a, t);
}

}  // namespace normlab::detail
