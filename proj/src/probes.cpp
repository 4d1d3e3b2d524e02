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
#include "normlab/probes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace normlab {

namespace {

double value(const NormHandle& norm, const Vector& x) { return norm.eval(x).mid(); }

double sq(double v) { return v * v; }

double sup_abs(const Vector& x) {
  double m = 0.0;
  for (double v : x.coords()) m = std::max(m, std::abs(v));
  return m;
}

// 2N(x)^2 + 2N(y)^2 - N(x + y)^2
double convexity_defect(const NormHandle& norm, const Vector& x, const Vector& y) {
  return 2.0 * sq(value(norm, x)) + 2.0 * sq(value(norm, y)) - sq(value(norm, x + y));
}

std::vector<Vector> signed_coordinate_directions(std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < dim; ++k) {
    out.push_back(Vector::unit(dim, k));
    out.push_back(-Vector::unit(dim, k));
  }
  return out;
}

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>({hw, 8, count});
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of the combined words
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector random_gaussian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = gauss(rng);
  return v;
}

Vector normalized(const NormHandle& norm, const Vector& x) {
  const double n = value(norm, x);
  if (!(n > 0.0)) raise(ErrorCode::kDegenerateNorm, "cannot normalize a null vector");
  return x / n;
}

WitnessReport mlur_witness_check(const NormHandle& norm, const Vector& x,
                                 const std::vector<Vector>& xs, const std::vector<Vector>& ys,
                                 const WitnessOptions& options) {
  if (xs.size() != ys.size()) {
    raise(ErrorCode::kInvalidParameter, "witness sequences differ in length");
  }
  if (!options.indices.empty() && options.indices.size() != xs.size()) {
    raise(ErrorCode::kInvalidParameter, "witness index list differs in length");
  }
  const double nx = value(norm, x);
  WitnessReport report;
  report.rows.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    WitnessRow& row = report.rows[i];
    row.n = options.indices.empty() ? static_cast<int>(i + 1) : options.indices[i];
    row.a = std::max(std::abs(value(norm, xs[i]) - nx), std::abs(value(norm, ys[i]) - nx));
    row.b = value(norm, 0.5 * (xs[i] + ys[i]) - x);
    row.g = value(norm, xs[i] - ys[i]);
  });
  for (const auto& row : report.rows) {
    report.envelope_constant =
        std::max(report.envelope_constant, std::max(row.a, row.b) * std::ldexp(1.0, row.n));
    report.min_gap = std::min(report.min_gap, row.g);
  }
  for (const auto& row : report.rows) {
    report.bound.push_back(report.envelope_constant * std::ldexp(1.0, -row.n));
  }
  report.envelope_ok = !report.rows.empty() && report.envelope_constant <= options.envelope_cap;
  report.gap_ok = !report.rows.empty() && report.min_gap >= options.gap - options.tol &&
                  options.gap > 0.0;
  report.non_mlur = report.envelope_ok && report.gap_ok;
  return report;
}

LurGap lur_gap_estimate(const NormHandle& norm, const Vector& x, double sep,
                        const LurOptions& options) {
  if (!(sep > 0.0)) raise(ErrorCode::kInvalidParameter, "separation must be positive");
  const double nx = value(norm, x);
  if (std::abs(nx - 1.0) > 1e-6) raise(ErrorCode::kPrecondition, "LUR probe expects a unit x");
  const std::size_t dim = x.dim();

  // Unit y in the half-line direction from x along d with N(x - y) = sep.
  auto y_along = [&](const Vector& d) -> std::optional<Vector> {
    auto y_of = [&](double s) { return normalized(norm, x + s * d); };
    auto dist = [&](double s) { return value(norm, x - y_of(s)); };
    double lo = 0.0;
    double hi = 1e-3;
    while (dist(hi) < sep) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e8) return std::nullopt;
    }
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (dist(mid) < sep) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    // A ray through the origin jumps from x to -x and never hits sep exactly.
    if (std::abs(dist(hi) - sep) > 1e-6) return std::nullopt;
    return y_of(hi);
  };
  auto score = [&](const Vector& d, Vector* y_out) {
    std::optional<Vector> y;
    try {
      y = y_along(d);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateNorm) throw;
    }
    if (!y) return std::numeric_limits<double>::infinity();
    if (y_out) *y_out = *y;
    return convexity_defect(norm, x, *y);
  };

  std::vector<Vector> dirs = signed_coordinate_directions(dim);
  for (std::size_t i = 0; i < options.samples; ++i) {
    std::mt19937_64 rng(stream_seed(options.seed, i));
    dirs.push_back(random_gaussian(rng, dim));
  }
  std::vector<double> scores(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { scores[i] = score(dirs[i], nullptr); });

  std::vector<std::size_t> order(dirs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  const std::size_t polish = std::min(options.refine, order.size());

  // Random local search around the most promising directions.
  std::vector<double> refined(polish);
  std::vector<Vector> refined_dir(polish);
  parallel_for(polish, [&](std::size_t r) {
    std::mt19937_64 rng(stream_seed(options.seed ^ 0x5eedULL, r));
    Vector d = dirs[order[r]];
    d /= euclidean_norm(d.span());
    double best = scores[order[r]];
    double step = 0.5;
    for (int it = 0; it < 120 && step > 1e-6; ++it) {
      Vector trial = d + step * random_gaussian(rng, dim) / std::sqrt(static_cast<double>(dim));
      const double s = score(trial, nullptr);
      if (s < best) {
        best = s;
        d = trial / euclidean_norm(trial.span());
      } else {
        step *= 0.85;
      }
    }
    refined[r] = best;
    refined_dir[r] = d;
  });

  LurGap out;
  Vector best_dir;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (scores[i] < out.value) out.value = scores[i], best_dir = dirs[i];
  }
  for (std::size_t r = 0; r < polish; ++r) {
    if (refined[r] < out.value) out.value = refined[r], best_dir = refined_dir[r];
  }
  if (std::isfinite(out.value)) score(best_dir, &out.y);
  return out;
}

double rotundity_scan(const NormHandle& norm, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) raise(ErrorCode::kInvalidParameter, "rotundity scan needs samples");
  std::vector<double> margin(samples);
  parallel_for(samples, [&](std::size_t i) {
    std::mt19937_64 rng(stream_seed(seed, i));
    const Vector x = normalized(norm, random_gaussian(rng, norm.dim()));
    const Vector y = normalized(norm, random_gaussian(rng, norm.dim()));
    margin[i] = 1.0 - value(norm, 0.5 * (x + y));
  });
  return *std::min_element(margin.begin(), margin.end());
}

GateauxScan gateaux_scan(const NormHandle& norm, const Vector& x, const std::vector<Vector>& directions,
                         const SweepOptions& options) {
  if (!(value(norm, x) > 0.0)) raise(ErrorCode::kPrecondition, "Gateaux scan at the origin");
  std::vector<double> left(directions.size());
  std::vector<double> right(directions.size());
  parallel_for(directions.size(), [&](std::size_t i) {
    left[i] = one_sided_derivative(norm, x, directions[i], Side::kLeft, options).value;
    right[i] = one_sided_derivative(norm, x, directions[i], Side::kRight, options).value;
  });
  GateauxScan scan;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double gap = right[i] - left[i];
    if (i == 0 || gap > scan.max_discrepancy) {
      scan.max_discrepancy = gap;
      scan.worst = i;
      scan.left = left[i];
      scan.right = right[i];
    }
  }
  return scan;
}

double wur_defect_check(const NormHandle& norm, const std::vector<std::pair<Vector, Vector>>& pairs,
                        std::size_t k_max) {
  const auto quad = norm.quadratic_part();
  if (!quad) raise(ErrorCode::kPrecondition, "WUR defect check needs a quad_perturb root");
  if (k_max > quad->functionals.size()) {
    raise(ErrorCode::kPrecondition, "k_max exceeds the quadratic system");
  }
  std::vector<double> worst(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto& [x, y] = pairs[i];
    const double defect = convexity_defect(norm, x, y);
    const Vector diff = x - y;
    for (std::size_t k = 0; k < k_max; ++k) {
      const double lhs = quad->scale * quad->weights[k] * sq(pair(quad->functionals[k], diff));
      worst[i] = std::max(worst[i], lhs - defect);
    }
  });
  return pairs.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

double ured_direction_modulus(const NormHandle& norm, const Vector& z, std::size_t samples,
                              std::uint64_t seed) {
  const double nz = value(norm, z);
  if (!(nz > 0.0) || !(nz < 2.0)) {
    raise(ErrorCode::kPrecondition, "URED probe needs 0 < N(z) < 2");
  }
  const Vector half = 0.5 * z;
  // Centers c = t u with t chosen so that max N(c +- z/2) = 1; convex in t.
  auto modulus_along = [&](const Vector& u) {
    auto top = [&](double t) {
      return std::max(value(norm, t * u + half), value(norm, t * u - half));
    };
    double lo = 0.0;
    double hi = 1.0 / std::max(value(norm, u), 1e-300);
    while (top(hi) < 1.0) {
      lo = hi;
      hi *= 2.0;
    }
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (top(mid) < 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Vector c = hi * u;
    return convexity_defect(norm, c + half, c - half);
  };
  std::vector<Vector> dirs = signed_coordinate_directions(z.dim());
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng(stream_seed(seed, i));
    dirs.push_back(random_gaussian(rng, z.dim()));
  }
  std::vector<double> m(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { m[i] = modulus_along(dirs[i]); });
  return *std::min_element(m.begin(), m.end());
}

PorosityCertificate porosity_certificate(const AmbientSpec& spec, const Vector& x, double delta,
                                         double lambda, std::size_t ball_samples,
                                         std::uint64_t seed) {
  if (spec.base != BaseKind::kSup || !spec.unweighted()) {
    raise(ErrorCode::kPrecondition, "porosity certificate is built on the unweighted sup sphere");
  }
  if (x.dim() != spec.dim) raise(ErrorCode::kDimensionMismatch, "porosity point dimension mismatch");
  if (!(delta > 0.0 && delta < 1.0)) raise(ErrorCode::kPrecondition, "delta must lie in (0, 1)");
  if (!(lambda > 0.0 && lambda < 1.0)) raise(ErrorCode::kPrecondition, "lambda must lie in (0, 1)");
  if (std::abs(sup_abs(x) - 1.0) > 1e-9) raise(ErrorCode::kPrecondition, "point must be on the sphere");

  PorosityCertificate cert;
  cert.x = x;
  cert.delta = delta;
  std::size_t n = 0;
  for (std::size_t k = 1; k < x.dim(); ++k) {
    if (std::abs(x[k]) > std::abs(x[n])) n = k;
  }
  cert.n_face = static_cast<int>(n + 1);
  cert.sign = x[n] >= 0.0 ? 1 : -1;
  // x itself lies on the face n, so z = x satisfies |z - x| < delta.
  cert.z = x;
  cert.w = (1.0 - delta) * cert.z;
  cert.w[n] += delta * cert.sign;
  cert.radius = delta * (1.0 - lambda) / 2.0;
  cert.distance_wx = sup_abs(cert.w - x);
  if (!(cert.distance_wx < delta)) {
    raise(ErrorCode::kCertificateFailure, "no face point within delta of x");
  }

  // Sphere points of the ball around w: coordinate n stays at sign, the rest
  // move by at most radius, with some coordinates pushed to the ball boundary.
  std::vector<char> bad(ball_samples, 0);
  parallel_for(ball_samples, [&](std::size_t i) {
    std::mt19937_64 rng(stream_seed(seed, i));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution extreme(0.5);
    Vector p = cert.w;
    for (std::size_t k = 0; k < p.dim(); ++k) {
      if (k == n) continue;
      double u = unit(rng);
      if (extreme(rng)) u = u >= 0.0 ? 1.0 : -1.0;
      p[k] += cert.radius * u;
    }
    const double top = sup_abs(p);
    const bool on_face = cert.sign * p[n] == top;
    bool interior = on_face;
    for (std::size_t k = 0; k < p.dim() && interior; ++k) {
      if (k != n && std::abs(p[k]) >= top - kFaceMargin) interior = false;
    }
    bad[i] = interior ? 0 : 1;
  });
  cert.samples_checked = ball_samples;
  cert.violations = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
  return cert;
}

WitnessReport face_mlur_witness(const NormHandle& norm, const Vector& x, double eps,
                                const std::vector<int>& ns, double tol) {
  const std::size_t dim = x.dim();
  if (dim != norm.dim()) raise(ErrorCode::kDimensionMismatch, "face witness dimension mismatch");
  if (!(eps >= 0.0)) raise(ErrorCode::kInvalidParameter, "eps must be nonnegative");
  std::size_t n0 = 0;
  for (std::size_t k = 1; k < dim; ++k) {
    if (std::abs(x[k]) > std::abs(x[n0])) n0 = k;
  }
  const double top = std::abs(x[n0]);
  if (std::abs(top - 1.0) > 1e-9) raise(ErrorCode::kPrecondition, "x must lie on the unit sup sphere");
  const double nx2 = sq(value(norm, x));

  WitnessReport report;
  for (int big_n : ns) {
    if (big_n < 1 || static_cast<std::size_t>(big_n) > dim - 2) {
      raise(ErrorCode::kPrecondition,
            "v_N needs N <= dim - 2 so that the kernel intersection is nontrivial");
    }
    // first 1-based index m > N with m != n0 + 1
    std::size_t m = static_cast<std::size_t>(big_n);  // 0-based index of m = N + 1
    if (m == n0) ++m;
    if (m >= dim) raise(ErrorCode::kPrecondition, "no free coordinate beyond N");
    if (std::abs(x[m]) + eps >= top - kFaceMargin) {
      raise(ErrorCode::kPrecondition, "x +- v_N leaves the interior of the face");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (k != n0 && std::abs(x[k]) >= top - kFaceMargin) {
        raise(ErrorCode::kPrecondition, "x is not in the interior of a face");
      }
    }
    const Vector v = eps * Vector::unit(dim, m);
    WitnessRow row;
    row.n = big_n;
    row.a = std::max(std::abs(sq(value(norm, x + v)) - nx2), std::abs(sq(value(norm, x - v)) - nx2));
    row.b = value(norm, 0.5 * ((x + v) + (x - v)) - x);
    row.g = value(norm, 2.0 * v);
    report.rows.push_back(row);
    // 2 (1 + eps)^2 sum_{n > N} 4^-n = 2 (1 + eps)^2 4^-N / 3
    report.bound.push_back(2.0 * sq(1.0 + eps) * std::ldexp(1.0, -2 * big_n) / 3.0);
  }
  report.envelope_ok = true;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    report.envelope_constant = std::max(report.envelope_constant, row.a * std::ldexp(1.0, row.n));
    report.min_gap = std::min(report.min_gap, row.g);
    if (row.a > report.bound[i] + tol) report.envelope_ok = false;
  }
  report.gap_ok = !report.rows.empty() && eps > 0.0 && report.min_gap >= 2.0 * eps - tol;
  report.non_mlur = report.envelope_ok && report.gap_ok;
  return report;
}

}  // namespace normlab
