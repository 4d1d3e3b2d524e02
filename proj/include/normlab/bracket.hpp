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

#include <algorithm>
#include <string>

#include "normlab/error.hpp"

namespace normlab {

// Certified enclosure [lower, upper] of a nonnegative quantity.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;

  static Bracket exact(double v) { return {v, v}; }

  double mid() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
  bool contains(double v, double slack = 0.0) const {
    return lower - slack <= v && v <= upper + slack;
  }
  bool overlaps(const Bracket& o, double slack = 0.0) const {
    return std::max(lower, o.lower) <= std::min(upper, o.upper) + slack;
  }

  Bracket operator+(const Bracket& o) const { return {lower + o.lower, upper + o.upper}; }
  Bracket scaled(double t) const { return {t * lower, t * upper}; }

  friend bool operator==(const Bracket&, const Bracket&) = default;
};

class BracketTooWide : public Error {
 public:
  BracketTooWide(const std::string& what, Bracket best)
      : Error(ErrorCode::kBracketTooWide, what), best_(best) {}
  const Bracket& best() const { return best_; }

 private:
  Bracket best_;
};

}  // namespace normlab
