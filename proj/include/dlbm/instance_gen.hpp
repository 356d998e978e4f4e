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

#include <string>
#include <vector>

#include "dlbm/types.hpp"

namespace dlbm {

struct GenSpec {
  Index m = 4;
  Index n = 16;
  double mu0 = 1.0;
  double kappa_target = 1.0;  // desired kappa(A); requires 1 for m = 1
  double delta0 = 0.0;        // desired initial proximity, in [0, 0.5]
  std::uint64_t seed = kDefaultSeed;
};

/// Instance plus a certified interior starting point: A x0 = b,
/// A'y0 + s0 = c, x0 > 0, s0 > 0, delta(s0, mu0) = delta0 within 1e-6.
struct GeneratedProblem {
  LoInstance instance;
  Vector y0;
  Vector s0;
  Vector x0;
  double mu0 = 1.0;
};

/// A = U Sigma V' with geometrically spaced singular values in
/// [1, kappa_target], x0 = e, s0 = mu0 e (perturbed multiplicatively and
/// re-certified by bisection when delta0 > 0), b and c derived so the start
/// is feasible by construction. Deterministic in the seed.
GeneratedProblem gen_centered(const GenSpec& spec);

enum class SuiteName { Scaling, Conditioning, NoiseSweep };

SuiteName parse_suite_name(const std::string& name);

struct SuiteCase {
  GeneratedProblem problem;
  std::string label;
  double noise_scale = -1.0;  // >= 0 only for the noise-sweep suite
};

/// scaling: (m,n) in {(4,16),(8,64),(16,256),(32,1024)}, n = m^2 held.
/// conditioning: (8,64) with kappa(A) in {1, 10, 100, 1000}.
/// noise-sweep: one fixed (8,64) instance, noise_scale grid
/// {0, 0.25, 0.5, 1, 2, 10} (the last two exceed the admissible budget).
std::vector<SuiteCase> gen_suite(SuiteName name, std::uint64_t seed = kDefaultSeed);

}  // namespace dlbm
