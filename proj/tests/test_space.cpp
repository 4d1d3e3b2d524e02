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

#include "doctest.h"
#include "normlab/gauge.hpp"
#include "normlab/space.hpp"

using namespace normlab;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("pair is the finite dot product") {
  CHECK(pair(Functional::unit(3, 0), Vector::unit(3, 0)) == 1.0);
  CHECK(pair(Functional::unit(3, 0), Vector::unit(3, 1)) == 0.0);
  CHECK(pair(Functional{1, 2}, Vector{3, -1}) == 1.0);
  CHECK(code_of([] { (void)pair(Functional{1, 2}, Vector{1, 2, 3}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("ambient spec validation") {
  CHECK(code_of([] { (void)AmbientSpec::make(1, BaseKind::kSup); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { (void)AmbientSpec::make(2, BaseKind::kSup, {1.0, 0.0}); }) ==
        ErrorCode::kInvalidParameter);
  CHECK(code_of([] { (void)AmbientSpec::make(2, BaseKind::kSup, {1.0}); }) ==
        ErrorCode::kInvalidParameter);
  const AmbientSpec s = AmbientSpec::make(3, BaseKind::kEll1);
  CHECK(s.unweighted());
  CHECK(s.weights.size() == 3);
}

TEST_CASE("base values") {
  CHECK(base_value(AmbientSpec::make(3, BaseKind::kSup), std::vector<double>{1, -2, 0}) == 2.0);
  CHECK(base_value(AmbientSpec::make(2, BaseKind::kEuclidean), std::vector<double>{3, 4}) == 5.0);
  CHECK(base_value(AmbientSpec::make(3, BaseKind::kEll1), std::vector<double>{1, 1, 1}) == 3.0);
  // duals: l2 self-dual, sup <-> l1
  CHECK(base_dual_value(AmbientSpec::make(2, BaseKind::kEuclidean), std::vector<double>{3, 4}) ==
        doctest::Approx(5.0).epsilon(1e-15));
  CHECK(base_dual_value(AmbientSpec::make(3, BaseKind::kSup), std::vector<double>{1, -2, 0.5}) == 3.5);
  CHECK(base_dual_value(AmbientSpec::make(3, BaseKind::kEll1), std::vector<double>{1, -2, 0.5}) == 2.0);
}

TEST_CASE("canonical system") {
  const auto sys3 = canonical_system(AmbientSpec::make(3, BaseKind::kSup));
  REQUIRE(sys3.count() == 3);
  CHECK(sys3.e(0) == Vector{1, 0, 0});
  CHECK(sys3.e(1) == Vector{0, 1, 0});
  CHECK(sys3.e(2) == Vector{0, 0, 1});
  CHECK(sys3.biorthogonality_defect() == 0.0);

  const auto sys2 = canonical_system(AmbientSpec::make(2, BaseKind::kEuclidean));
  CHECK(pair(sys2.f(0), sys2.e(0)) == 1.0);
  CHECK(pair(sys2.f(0), sys2.e(1)) == 0.0);

  // |e_n|_1 |f_n|_inf = 1 for every n
  CHECK(canonical_system(AmbientSpec::make(4, BaseKind::kEll1)).bound_certificate() == 1.0);
}

TEST_CASE("system coefficients") {
  const auto sys = canonical_system(AmbientSpec::make(3, BaseKind::kSup));
  const auto c = sys.coefficients(std::vector<double>{0.5, -1, 2});
  CHECK(c == std::vector<double>{0.5, -1, 2});
}

TEST_CASE("biorthogonality is enforced") {
  const AmbientSpec spec = AmbientSpec::make(2, BaseKind::kEuclidean);
  CHECK(code_of([&] {
          (void)BiorthogonalSystem(spec, {Vector{1, 0}, Vector{1, 1}}, {Functional{1, 0}, Functional{0, 1}});
        }) == ErrorCode::kPrecondition);
}

TEST_CASE("normalize_system") {
  const AmbientSpec spec = AmbientSpec::make(4, BaseKind::kEuclidean);
  const auto sys = canonical_system(spec);
  const NormHandle euclid = base_norm(spec);

  SUBCASE("unit vectors are unchanged") {
    const auto out = normalize_system(sys, euclid);
    for (std::size_t n = 0; n < 4; ++n) CHECK(out.e(n) == sys.e(n));
  }
  SUBCASE("scaling") {
    const auto out = normalize_system(sys, scaled(euclid, 2.0));
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(out.e(n) == sys.e(n) / 2.0);
      CHECK(out.f(n) == sys.f(n) * 2.0);
    }
    CHECK(out.biorthogonality_defect() <= 1e-12);
  }
  SUBCASE("slice-removed Minkowski sum: |||e2||| = 1/(1 + eps)") {
    const double eps = 0.5;
    EvalOptions opts;
    opts.tol = 1e-4;
    const NormHandle norm = mink_sum(slice_restrict(euclid, Functional::unit(4, 0), 1.0 - eps), euclid, eps, opts);
    const auto out = normalize_system(sys, norm);
    for (std::size_t i = 0; i < 4; ++i) CHECK(out.e(1)[i] == doctest::Approx(1.5 * sys.e(1)[i]).epsilon(1e-4));
    CHECK(out.biorthogonality_defect() <= 1e-12);
    // idempotent up to evaluation tolerance
    const auto twice = normalize_system(out, norm);
    for (std::size_t n = 0; n < 4; ++n) {
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(twice.e(n)[i] - out.e(n)[i]) <= 1e-4);
    }
  }
  SUBCASE("closed-form idempotence") {
    const auto spec_w = AmbientSpec::make(4, BaseKind::kSup);
    const auto qsys = canonical_system(spec_w);
    const NormHandle draga = quad_perturb(draga_base(base_norm(spec_w), qsys), qsys);
    const auto once = normalize_system(qsys, draga);
    const auto twice = normalize_system(once, draga);
    for (std::size_t n = 0; n < 4; ++n) {
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(twice.e(n)[i] - once.e(n)[i]) <= 1e-9);
    }
  }
  SUBCASE("degenerate norm") {
    const AmbientSpec tiny = AmbientSpec::make(2, BaseKind::kSup, {1e-14, 1.0});
    CHECK(code_of([&] { (void)normalize_system(canonical_system(tiny), base_norm(tiny)); }) ==
          ErrorCode::kDegenerateNorm);
  }
}
