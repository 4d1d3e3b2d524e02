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
#include "normlab/space.hpp"
#include <cmath>
#include <random>

#include "doctest.h"
#include "normlab/gauge.hpp"
#include "normlab/probes.hpp"
#include "normlab/solve.hpp"

using namespace normlab;

namespace {

double l1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

NormHandle draga(std::size_t d) {
  const AmbientSpec spec = AmbientSpec::make(d, BaseKind::kSup);
  const auto sys = canonical_system(spec);
  return quad_perturb(draga_base(base_norm(spec), sys), sys);
}

}  // namespace

TEST_CASE("minimize_convex: squared euclidean norm") {
  const auto r = minimize_convex([](std::span<const double> v) { return dot(v, v); }, Vector{1, 1});
  CHECK(r.value.upper <= 1e-10);
  CHECK(euclidean_norm(r.argmin.span()) <= 1e-5);
  CHECK(r.value.lower <= r.value.upper);
}

TEST_CASE("minimize_convex: argmin reproduces the upper bound") {
  auto f = [](std::span<const double> v) { return std::abs(v[0] - 1.0) + 2.0 * std::abs(v[1] + 0.5) + dot(v, v); };
  const auto r = minimize_convex(f, Vector{3, 3});
  CHECK(std::abs(f(r.argmin.span()) - r.value.upper) <= 1e-12);
}

TEST_CASE("minimize_convex: lower bound from the caller is kept") {
  SolveOptions o;
  o.lower_bound = 0.25;
  o.tol = 1e-8;
  auto f = [](std::span<const double> v) { return 0.25 + std::abs(v[0]) + std::abs(v[1] - v[2]); };
  const auto r = minimize_convex(f, Vector{1, -1, 2}, o);
  CHECK(r.value.lower == 0.25);
  CHECK(r.value.contains(0.25, 1e-8));
  CHECK(r.converged);
}

TEST_CASE("minimize_convex: squared inf-convolution splitting at x1") {
  // |u|_1^2 + |v|_2^2 / eps over u + v = e1, |.|_1 the slab gauge at level sqrt(1 - eps)
  const double eps = 0.5;
  const double c = std::sqrt(1.0 - eps);
  const Vector x = Vector::unit(4, 0);
  auto f = [&](std::span<const double> v) {
    std::vector<double> u(4);
    for (std::size_t i = 0; i < 4; ++i) u[i] = x[i] - v[i];
    const double n1 = std::max(euclidean_norm(u), std::abs(u[0]) / c);
    return n1 * n1 + dot(v, v) / eps;
  };
  const auto r = minimize_convex(f, Vector(4));
  CHECK(r.value.upper == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.argmin[0] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("minimize_convex: l1 quotient objective at e1") {
  // max(|e1 - T y|_1, |y|_2), (T y)_n = y_n / 2^(n+1)
  const std::size_t d = 4;
  auto f = [&](std::span<const double> y) {
    std::vector<double> u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = (i == 0 ? 1.0 : 0.0) - std::ldexp(y[i], -static_cast<int>(i + 1));
    return std::max(l1(u), euclidean_norm(y));
  };
  const auto r = minimize_convex(f, Vector(d));
  CHECK(r.value.upper == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("golden_section") {
  const auto m = golden_section([](double t) { return (t - 0.3) * (t - 0.3) + 1.0; }, -1.0, 2.0);
  CHECK(m.argmin == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one_sided_derivative: euclidean radial direction") {
  const NormHandle e = base_norm(AmbientSpec::make(3, BaseKind::kEuclidean));
  const Vector x = Vector::unit(3, 0);
  CHECK(one_sided_derivative(e, x, x, Side::kLeft).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(one_sided_derivative(e, x, x, Side::kRight).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("one_sided_derivative: the Draga norm has a corner at e1 + e2") {
  const NormHandle n = draga(8);
  const Vector x = Vector::unit(8, 0) + Vector::unit(8, 1);
  const Vector d = Vector::unit(8, 0);
  const auto left = one_sided_derivative(n, x, d, Side::kLeft);
  const auto right = one_sided_derivative(n, x, d, Side::kRight);
  CHECK(std::abs(left.value - std::sqrt(21.0) / 21.0) <= 1e-3);
  CHECK(std::abs(right.value - 5.0 * std::sqrt(21.0) / 21.0) <= 1e-3);
  // convexity: nondecreasing slopes
  for (std::size_t k = 1; k < right.quotients.size(); ++k) {
    CHECK(right.quotients[k] <= right.quotients[k - 1] + 1e-9);
  }
  for (std::size_t k = 1; k < left.quotients.size(); ++k) {
    CHECK(left.quotients[k] >= left.quotients[k - 1] - 1e-9);
  }
}

TEST_CASE("one_sided_derivative: left never exceeds right") {
  const NormHandle n = draga(6);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const Vector x = random_gaussian(rng, 6);
    const Vector d = random_gaussian(rng, 6);
    const double l = one_sided_derivative(n, x, d, Side::kLeft).value;
    const double r = one_sided_derivative(n, x, d, Side::kRight).value;
    CHECK(l <= r + 1e-6);
  }
}

TEST_CASE("smoothness_defect") {
  const NormHandle e = base_norm(AmbientSpec::make(3, BaseKind::kEuclidean));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vector x = normalized(e, random_gaussian(rng, 3));
    const Vector d = normalized(e, random_gaussian(rng, 3));
    CHECK(smoothness_defect(e, x, d, 1e-3) <= 1e-3);
  }
  const NormHandle sup = base_norm(AmbientSpec::make(3, BaseKind::kSup));
  CHECK(smoothness_defect(sup, Vector::unit(3, 0), Vector::unit(3, 1), 0.5) == 0.0);
}
