// Copyright 2026 The dlbm Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dlbm/types.hpp"

namespace dlbm {

/// Deterministic double-precision sampler on top of mt19937_64. The engine is
/// fully specified by the standard and the uniform/normal transforms below use
/// only plain arithmetic and libm, so identical seeds reproduce identical
/// streams on one platform and agree to last-ulp effects across platforms
/// (std::normal_distribution makes no such guarantee).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; draws are generated in pairs.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vector gaussian(Index dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  /// Uniform direction on the unit sphere in `dim` dimensions.
  Vector unit_sphere(Index dim) {
    Vector v = gaussian(dim);
    double norm = v.norm();
    while (norm == 0.0) {  // astronomically unlikely; resample
      v = gaussian(dim);
      norm = v.norm();
    }
    return v / norm;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace dlbm
