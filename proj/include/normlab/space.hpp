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

// Finite truncations of sequence spaces: coordinate vectors, functionals and
// biorthogonal systems. Everything in the library operates on R^dim with the
// coordinate pairing <f, x> = sum_i f_i x_i.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "normlab/error.hpp"

namespace normlab {

enum class BaseKind { kEuclidean, kSup, kEll1 };

const char* to_string(BaseKind kind);

// A truncated sequence space with its "original" norm. Weights act
// coordinatewise: the base norm of x is the plain l2 / l_inf / l1 norm of
// (w_i x_i).
struct AmbientSpec {
  std::size_t dim = 0;
  BaseKind base = BaseKind::kEuclidean;
  std::vector<double> weights;

  // Throws kInvalidParameter unless dim >= 2 and every weight is > 0. An
  // empty weight list means all ones.
  static AmbientSpec make(std::size_t dim, BaseKind base, std::vector<double> weights = {});

  bool unweighted() const;
  friend bool operator==(const AmbientSpec&, const AmbientSpec&) = default;
};

template <class Tag>
class Coords {
 public:
  Coords() = default;
  explicit Coords(std::size_t dim) : c_(dim, 0.0) {}
  explicit Coords(std::vector<double> c) : c_(std::move(c)) {}
  Coords(std::initializer_list<double> c) : c_(c) {}

  // k-th coordinate unit vector (0-based).
  static Coords unit(std::size_t dim, std::size_t k) {
    Coords out(dim);
    out.c_.at(k) = 1.0;
    return out;
  }

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> span() const { return c_; }
  std::span<double> span() { return c_; }
  const std::vector<double>& coords() const { return c_; }

  Coords& operator+=(const Coords& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Coords& operator-=(const Coords& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Coords& operator*=(double t) {
    for (double& v : c_) v *= t;
    return *this;
  }
  Coords& operator/=(double t) {
    for (double& v : c_) v /= t;
    return *this;
  }

  friend Coords operator+(Coords a, const Coords& b) { return a += b; }
  friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
  friend Coords operator-(Coords a) { return a *= -1.0; }
  friend Coords operator*(double t, Coords a) { return a *= t; }
  friend Coords operator*(Coords a, double t) { return a *= t; }
  friend Coords operator/(Coords a, double t) { return a /= t; }
  friend bool operator==(const Coords&, const Coords&) = default;

 private:
  void check_same(const Coords& o) const {
    if (o.c_.size() != c_.size()) {
      raise(ErrorCode::kDimensionMismatch,
            "coordinate arrays of length " + std::to_string(c_.size()) + " and " +
                std::to_string(o.c_.size()));
    }
  }

  std::vector<double> c_;
};

using Vector = Coords<struct PrimalTag>;
using Functional = Coords<struct DualTag>;

inline Functional to_functional(const Vector& v) { return Functional(v.coords()); }
inline Vector to_vector(const Functional& f) { return Vector(f.coords()); }

// <f, x>. Throws kDimensionMismatch on length mismatch.
double pair(const Functional& f, const Vector& x);
double dot(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const double> a);

// Closed-form base norm of `spec` and its dual norm.
double base_value(const AmbientSpec& spec, std::span<const double> x);
double base_dual_value(const AmbientSpec& spec, std::span<const double> f);

class NormHandle;

// Paired (e_n, f_n) with f_n(e_m) = delta_nm. The boundedness certificate is
// max_n ||e_n|| * ||f_n||^* measured in the ambient base norm.
class BiorthogonalSystem {
 public:
  static constexpr double kBiorthogonalityTol = 1e-12;

  // Throws kPrecondition if the pairing defect exceeds 1e-12, and
  // kDimensionMismatch on inconsistent lengths.
  BiorthogonalSystem(AmbientSpec space, std::vector<Vector> e, std::vector<Functional> f);

  std::size_t count() const { return e_.size(); }
  const Vector& e(std::size_t n) const { return e_.at(n); }
  const Functional& f(std::size_t n) const { return f_.at(n); }
  const std::vector<Vector>& vectors() const { return e_; }
  const std::vector<Functional>& functionals() const { return f_; }
  const AmbientSpec& space() const { return space_; }
  std::size_t dim() const { return space_.dim; }

  double bound_certificate() const { return bound_; }
  // max_{n,m} |f_n(e_m) - delta_nm|
  double biorthogonality_defect() const;
  // Coefficients f_n(x), n < count.
  std::vector<double> coefficients(std::span<const double> x) const;

 private:
  AmbientSpec space_;
  std::vector<Vector> e_;
  std::vector<Functional> f_;
  double bound_ = 0.0;
};

// Coordinate basis and coordinate functionals of `spec`.
BiorthogonalSystem canonical_system(const AmbientSpec& spec);

// e'_n = e_n / N(e_n), f'_n = N(e_n) f_n, using the bracket midpoint of N.
// Throws kDegenerateNorm if some N(e_n) < 1e-12.
BiorthogonalSystem normalize_system(const BiorthogonalSystem& sys, const NormHandle& norm);

}  // namespace normlab
