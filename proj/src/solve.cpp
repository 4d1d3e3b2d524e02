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
#include "normlab/solve.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "normlab/gauge.hpp"

namespace normlab {

namespace {

struct BudgetExhausted {};

// Wraps the objective with evaluation counting and best-point tracking.
class Tracker {
 public:
  Tracker(const ConvexObjective& f, std::size_t budget) : f_(f), budget_(budget) {}

  double operator()(std::span<const double> x) {
    if (evals_ >= budget_) throw BudgetExhausted{};
    ++evals_;
    const double v = f_(x);
    if (!std::isfinite(v)) {
      raise(ErrorCode::kNumericalInstability, "objective returned a non-finite value");
    }
    if (v < best_value_) {
      best_value_ = v;
      best_.assign(x.begin(), x.end());
    }
    return v;
  }

  std::size_t evaluations() const { return evals_; }
  std::size_t remaining() const { return budget_ - evals_; }
  double best_value() const { return best_value_; }
  const std::vector<double>& best() const { return best_; }

 private:
  const ConvexObjective& f_;
  std::size_t budget_;
  std::size_t evals_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_;
};

std::vector<double> fd_subgradient(Tracker& f, const std::vector<double>& x) {
  std::vector<double> g(x.size());
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double sq_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

// Exact line search of a convex function along `dir` from `base`, where
// f(base) = f0. Returns the step taken (0 if no improvement).
double line_search(Tracker& f, const std::vector<double>& base, double f0,
                   const std::vector<double>& dir, double radius) {
  std::vector<double> p(base.size());
  auto phi = [&](double t) {
    for (std::size_t i = 0; i < base.size(); ++i) p[i] = base[i] + t * dir[i];
    return f(p);
  };
  double lo = -radius;
  double hi = radius;
  const double fp = phi(radius);
  const double fm = phi(-radius);
  if (fp < f0 && fp <= fm) {
    double t = radius;
    double ft = fp;
    lo = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double next = 2.0 * t;
      const double fn = phi(next);
      if (fn >= ft) {
        hi = next;
        break;
      }
      lo = t;
      t = next;
      ft = fn;
      hi = 2.0 * t;
    }
  } else if (fm < f0) {
    double t = -radius;
    double ft = fm;
    hi = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double next = 2.0 * t;
      const double fn = phi(next);
      if (fn >= ft) {
        lo = next;
        break;
      }
      hi = t;
      t = next;
      ft = fn;
      lo = 2.0 * t;
    }
  }
  const ScalarMinimum m = golden_section(phi, lo, hi, 40);
  return m.value < f0 ? m.argmin : 0.0;
}

// Min-norm point of the convex hull of the rows of g (Frank-Wolfe with exact
// steps on the simplex).
std::vector<double> min_norm_hull(const std::vector<std::vector<double>>& g) {
  std::vector<double> p = g[0];
  for (int it = 0; it < 200; ++it) {
    std::size_t best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) d += g[k][i] * p[i];
      if (d < best_dot) best_dot = d, best = k;
    }
    double pp = 0.0, num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double diff = p[i] - g[best][i];
      pp += p[i] * p[i];
      num += diff * p[i];
      den += diff * diff;
    }
    if (den <= 0.0 || num <= 1e-15 * pp) break;
    const double gamma = std::min(1.0, num / den);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= gamma * (p[i] - g[best][i]);
  }
  return p;
}

}  // namespace

ScalarMinimum golden_section(const std::function<double(double)>& f, double a, double b,
                             int iterations) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  ScalarMinimum best{c, fc};
  if (fd < best.value) best = {d, fd};
  for (int k = 0; k < iterations && (b - a) > 0.0; ++k) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      if (!(c > a && c < d)) break;
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      if (!(d > c && d < b)) break;
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  for (double end : {a, b}) {
    const double fe = f(end);
    if (fe < best.value) best = {end, fe};
  }
  return best;
}

SolveReport minimize_convex(const ConvexObjective& objective, const Vector& start,
                            const SolveOptions& options) {
  if (options.budget < 1) raise(ErrorCode::kInvalidParameter, "solver budget must be positive");
  if (!(options.tol > 0.0)) raise(ErrorCode::kInvalidParameter, "solver tolerance must be positive");
  const std::size_t n = start.dim();
  Tracker f(objective, options.budget);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  std::size_t iterations = 0;
  bool stagnated = false;

  auto width_ok = [&] {
    return options.lower_bound && f.best_value() - *options.lower_bound <= options.tol;
  };

  try {
    std::vector<double> x = start.coords();
    double fx = f(x);
    if (!width_ok() && n > 0) {
      // Phase 1: subgradient steps towards a target level below the best value.
      double gap = options.lower_bound ? std::max(fx - *options.lower_bound, 1e-300)
                                       : 0.25 * std::max(std::abs(fx), 1e-3);
      const std::size_t phase1_budget = options.budget * 2 / 5;
      std::size_t since_improvement = 0;
      const std::size_t patience = 2 * n + 5;
      while (f.evaluations() + 2 * n + 1 < phase1_budget && !width_ok()) {
        ++iterations;
        const std::vector<double> g = fd_subgradient(f, x);
        const double gg = sq_norm(g);
        if (gg < 1e-300) break;
        double target = f.best_value() - gap;
        if (options.lower_bound) target = std::max(target, *options.lower_bound);
        const double step = std::max(fx - target, 0.0) / gg;
        for (std::size_t i = 0; i < n; ++i) x[i] -= step * g[i];
        const double before = f.best_value();
        fx = f(x);
        if (fx < before - 1e-15 * (1.0 + std::abs(before))) {
          since_improvement = 0;
        } else if (++since_improvement > patience) {
          gap *= 0.5;
          x = f.best();
          fx = f.best_value();
          since_improvement = 0;
        }
        if (gap < 1e-14 * (1.0 + std::abs(f.best_value()))) break;
      }

      // Phase 2: gradient sampling. The descent direction is the min-norm
      // element of the hull of gradients sampled in a small ball, which
      // handles the kinks where several pieces of a max are active.
      x = f.best();
      fx = f.best_value();
      {
        const std::size_t phase2_budget = options.budget * 4 / 5;
        const std::size_t samples = std::min<std::size_t>(n + 1, 8);
        double rho = 1e-3 * std::max(1.0, std::sqrt(sq_norm(x) / static_cast<double>(n)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<std::vector<double>> grads;
        std::vector<double> p(n);
        while (!width_ok() && rho > 1e-11 &&
               f.evaluations() + (samples + 1) * (2 * n) + 120 < phase2_budget) {
          ++iterations;
          grads.clear();
          grads.push_back(fd_subgradient(f, x));
          for (std::size_t k = 0; k < samples; ++k) {
            double len = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              p[i] = gauss(rng);
              len += p[i] * p[i];
            }
            const double r = rho * std::pow(unit(rng), 1.0 / static_cast<double>(n)) / std::sqrt(len);
            for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + r * p[i];
            grads.push_back(fd_subgradient(f, p));
          }
          std::vector<double> d = min_norm_hull(grads);
          const double dn = std::sqrt(sq_norm(d));
          if (dn < 1e-12) {
            rho *= 0.1;
            continue;
          }
          for (double& c : d) c /= -dn;
          if (line_search(f, x, fx, d, rho) == 0.0) {
            rho *= 0.5;
          }
          x = f.best();
          fx = f.best_value();
        }
      }

      // Phase 3: exact line searches along coordinate and random directions.
      x = f.best();
      fx = f.best_value();
      double radius = options.initial_step > 0.0
                          ? options.initial_step
                          : 1e-2 * std::max(1.0, std::sqrt(sq_norm(x) / static_cast<double>(n)));
      std::vector<double> dir(n);
      std::vector<double> anchor = x;
      while (!width_ok()) {
        ++iterations;
        const double sweep_start = fx;
        anchor = x;
        double largest_step = 0.0;
        for (std::size_t k = 0; k < 2 * n; ++k) {
          if (k < n) {
            std::fill(dir.begin(), dir.end(), 0.0);
            dir[k] = 1.0;
          } else {
            for (double& c : dir) c = gauss(rng);
            const double len = std::sqrt(sq_norm(dir));
            for (double& c : dir) c /= len;
          }
          const double t = line_search(f, x, fx, dir, radius);
          if (t != 0.0) {
            for (std::size_t i = 0; i < n; ++i) x[i] += t * dir[i];
            x = f.best();
            fx = f.best_value();
            largest_step = std::max(largest_step, std::abs(t));
          }
          if (width_ok()) break;
        }
        // Pattern move along the net displacement of the sweep; follows
        // curved ridges of max-type objectives.
        if (!width_ok() && largest_step > 0.0) {
          double len = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            dir[i] = x[i] - anchor[i];
            len += dir[i] * dir[i];
          }
          len = std::sqrt(len);
          if (len > 0.0) {
            for (double& c : dir) c /= len;
            if (line_search(f, x, fx, dir, len) != 0.0) {
              x = f.best();
              fx = f.best_value();
            }
          }
        }
        radius = std::max(largest_step > 0.0 ? 2.0 * largest_step : 0.25 * radius, 1e-15);
        const double gain = sweep_start - fx;
        if (gain <= 1e-16 * (1.0 + std::abs(fx)) && radius <= 1e-12) {
          stagnated = true;
          break;
        }
      }
    }
  } catch (const BudgetExhausted&) {
  }

  SolveReport report;
  report.iterations = iterations;
  report.evaluations = f.evaluations();
  report.argmin = Vector(f.best());
  const double best = f.best_value();
  const double lower = options.lower_bound ? std::min(*options.lower_bound, best) : 0.0;
  report.value = Bracket{std::max(lower, 0.0), best};
  report.converged = options.lower_bound ? best - *options.lower_bound <= options.tol : stagnated;
  // The subgradient probe around the minimizer does not count against the budget.
  {
    Tracker probe(objective, 2 * n + 1);
    try {
      report.dual_witness = Functional(fd_subgradient(probe, f.best()));
    } catch (const BudgetExhausted&) {
    }
  }
  return report;
}

DerivativeEstimate one_sided_derivative(const NormHandle& norm, const Vector& x, const Vector& d,
                                        Side side, const SweepOptions& options) {
  if (x.dim() != norm.dim() || d.dim() != norm.dim()) {
    raise(ErrorCode::kDimensionMismatch, "derivative probe dimension mismatch");
  }
  if (options.levels < 1 || !(options.h0 > 0.0)) {
    raise(ErrorCode::kInvalidParameter, "step sweep needs h0 > 0 and at least two levels");
  }
  const Bracket base = norm.eval(x);
  if (!(base.upper > 0.0)) raise(ErrorCode::kPrecondition, "derivative probe at the origin");
  const double sign = side == Side::kRight ? 1.0 : -1.0;
  DerivativeEstimate est;
  double noise_allowance = 0.0;
  for (int k = 0; k <= options.levels; ++k) {
    const double t = sign * options.h0 * std::ldexp(1.0, -k);
    const Bracket moved = norm.eval(x + t * d);
    est.quotients.push_back((moved.mid() - base.mid()) / t);
    noise_allowance =
        std::max(noise_allowance, (moved.width() + base.width() + 4e-16 * moved.upper) / std::abs(t));
  }
  // Right quotients decrease towards the limit as t shrinks; left ones increase.
  for (std::size_t k = 1; k < est.quotients.size(); ++k) {
    const double q_prev = est.quotients[k - 1];
    const double q = est.quotients[k];
    const double violation = side == Side::kRight ? q - q_prev : q_prev - q;
    if (violation > options.monotone_tol * std::max(1.0, std::abs(q)) + 2.0 * noise_allowance) {
      raise(ErrorCode::kNumericalInstability,
            "difference quotients are not monotone (violation " + std::to_string(violation) + ")");
    }
  }
  const double last = est.quotients.back();
  const double prev = est.quotients[est.quotients.size() - 2];
  est.value = 2.0 * last - prev;
  est.error = std::abs(last - prev);
  return est;
}

double smoothness_defect(const NormHandle& norm, const Vector& x, const Vector& d, double h) {
  if (!(h > 0.0)) raise(ErrorCode::kInvalidParameter, "smoothness defect needs h > 0");
  const Bracket nx = norm.eval(x);
  const Bracket nd = norm.eval(d);
  const double slack = 1e-6;
  if (!nx.contains(1.0, slack) || !nd.contains(1.0, slack)) {
    raise(ErrorCode::kPrecondition, "smoothness defect expects unit x and d");
  }
  return (norm.eval(x + h * d).mid() + norm.eval(x - h * d).mid() - 2.0 * nx.mid()) / h;
}

}  // namespace normlab
