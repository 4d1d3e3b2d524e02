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

#include <algorithm>
#include <cmath>

#include "normlab/gauge.hpp"

namespace normlab {

const char* to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::kEuclidean: return "euclidean";
    case BaseKind::kSup: return "sup";
    case BaseKind::kEll1: return "ell1";
  }
  return "?";
}

AmbientSpec AmbientSpec::make(std::size_t dim, BaseKind base, std::vector<double> weights) {
  if (dim < 2) raise(ErrorCode::kInvalidParameter, "ambient dimension must be at least 2");
  if (weights.empty()) weights.assign(dim, 1.0);
  if (weights.size() != dim) {
    raise(ErrorCode::kInvalidParameter, "weight list length differs from dimension");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      raise(ErrorCode::kInvalidParameter, "weights must be finite and strictly positive");
    }
  }
  return AmbientSpec{dim, base, std::move(weights)};
}

bool AmbientSpec::unweighted() const {
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 1.0; });
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    raise(ErrorCode::kDimensionMismatch, "pairing arrays of length " + std::to_string(a.size()) +
                                             " and " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double euclidean_norm(std::span<const double> a) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) {
    const double r = v / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

double pair(const Functional& f, const Vector& x) { return dot(f.span(), x.span()); }

namespace {

void check_dim(const AmbientSpec& spec, std::span<const double> x) {
  if (x.size() != spec.dim) {
    raise(ErrorCode::kDimensionMismatch, "expected " + std::to_string(spec.dim) +
                                             " coordinates, got " + std::to_string(x.size()));
  }
}

}  // namespace

double base_value(const AmbientSpec& spec, std::span<const double> x) {
  check_dim(spec, x);
  switch (spec.base) {
    case BaseKind::kEuclidean: {
      std::vector<double> wx(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) wx[i] = spec.weights[i] * x[i];
      return euclidean_norm(wx);
    }
    case BaseKind::kSup: {
      double m = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(spec.weights[i] * x[i]));
      return m;
    }
    case BaseKind::kEll1: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(spec.weights[i] * x[i]);
      return s;
    }
  }
  return 0.0;
}

double base_dual_value(const AmbientSpec& spec, std::span<const double> f) {
  check_dim(spec, f);
  switch (spec.base) {
    case BaseKind::kEuclidean: {
      std::vector<double> fw(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) fw[i] = f[i] / spec.weights[i];
      return euclidean_norm(fw);
    }
    case BaseKind::kSup: {
      double s = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) s += std::abs(f[i] / spec.weights[i]);
      return s;
    }
    case BaseKind::kEll1: {
      double m = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] / spec.weights[i]));
      return m;
    }
  }
  return 0.0;
}

BiorthogonalSystem::BiorthogonalSystem(AmbientSpec space, std::vector<Vector> e,
                                       std::vector<Functional> f)
    : space_(std::move(space)), e_(std::move(e)), f_(std::move(f)) {
  if (e_.size() != f_.size()) {
    raise(ErrorCode::kDimensionMismatch, "biorthogonal system needs as many functionals as vectors");
  }
  if (e_.size() > space_.dim) {
    raise(ErrorCode::kDimensionMismatch, "biorthogonal system larger than the ambient dimension");
  }
  for (std::size_t n = 0; n < e_.size(); ++n) {
    if (e_[n].dim() != space_.dim || f_[n].dim() != space_.dim) {
      raise(ErrorCode::kDimensionMismatch, "system element " + std::to_string(n) +
                                               " does not live in the ambient space");
    }
  }
  const double defect = biorthogonality_defect();
  if (defect > kBiorthogonalityTol) {
    raise(ErrorCode::kPrecondition,
          "pairing defect " + std::to_string(defect) + " exceeds biorthogonality tolerance");
  }
  for (std::size_t n = 0; n < e_.size(); ++n) {
    bound_ = std::max(bound_, base_value(space_, e_[n].span()) * base_dual_value(space_, f_[n].span()));
  }
}

double BiorthogonalSystem::biorthogonality_defect() const {
  double worst = 0.0;
  for (std::size_t n = 0; n < f_.size(); ++n) {
    for (std::size_t m = 0; m < e_.size(); ++m) {
      const double target = n == m ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(pair(f_[n], e_[m]) - target));
    }
  }
  return worst;
}

std::vector<double> BiorthogonalSystem::coefficients(std::span<const double> x) const {
  std::vector<double> out(f_.size());
  for (std::size_t n = 0; n < f_.size(); ++n) out[n] = dot(f_[n].span(), x);
  return out;
}

BiorthogonalSystem canonical_system(const AmbientSpec& spec) {
  std::vector<Vector> e;
  std::vector<Functional> f;
  e.reserve(spec.dim);
  f.reserve(spec.dim);
  for (std::size_t k = 0; k < spec.dim; ++k) {
    e.push_back(Vector::unit(spec.dim, k));
    f.push_back(Functional::unit(spec.dim, k));
  }
  return BiorthogonalSystem(spec, std::move(e), std::move(f));
}

BiorthogonalSystem normalize_system(const BiorthogonalSystem& sys, const NormHandle& norm) {
  if (norm.dim() != sys.dim()) {
    raise(ErrorCode::kDimensionMismatch, "norm and system live in different dimensions");
  }
  std::vector<Vector> e;
  std::vector<Functional> f;
  for (std::size_t n = 0; n < sys.count(); ++n) {
    const double len = norm.eval(sys.e(n)).mid();
    if (len < 1e-12) {
      raise(ErrorCode::kDegenerateNorm, "norm vanishes on system vector " + std::to_string(n));
    }
    e.push_back(sys.e(n) / len);
    f.push_back(sys.f(n) * len);
  }
  return BiorthogonalSystem(sys.space(), std::move(e), std::move(f));
}

}  // namespace normlab
