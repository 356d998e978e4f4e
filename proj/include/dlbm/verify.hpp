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

#include <cstdint>
#include <string>
#include <vector>

#include "dlbm/nes_oracle.hpp"
#include "dlbm/rng.hpp"
#include "dlbm/types.hpp"

namespace dlbm {

struct SuiteResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  double max_violation = 0.0;
  bool passed() const { return failures == 0; }
};

// Property suites. Every suite is deterministic in its seed.
SuiteResult verify_lemma8(std::uint64_t seed);        // 500 PD-matrix trials
SuiteResult verify_cond(std::uint64_t seed);          // 500 kappa(Q Psi Q') trials
SuiteResult verify_prop1(std::uint64_t seed);         // 10 x 1000 budget samples
SuiteResult verify_lambda(std::uint64_t seed);        // 100 rescaling pairs
SuiteResult verify_quadratic(std::uint64_t seed);     // 20 contraction chains
SuiteResult verify_identity(std::uint64_t seed);      // err = delta sin(psi)
SuiteResult verify_proximity(std::uint64_t seed);     // two delta routes agree
SuiteResult verify_sandwich(std::uint64_t seed);      // duality gap sandwich
SuiteResult verify_slack_kappa(std::uint64_t seed);   // kappa(S^-2) diagnostic
SuiteResult verify_budget(std::uint64_t seed);        // budget ~ 1/kappa(AS^-1)
SuiteResult verify_roundtrip(std::uint64_t seed);     // instance file round trip

std::vector<std::string> verify_suite_names();

/// Runs one suite by name ("all" runs every suite).
std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed);

/// Aggregate CSV (name,trials,failures,max_violation), byte-stable for a
/// fixed seed.
std::string aggregate_csv(const std::vector<SuiteResult>& results);

/// Quantum direction query whose measured error is at most max_err, found by
/// halving noise_scale from 1 (falls back to the exact direction). Used by
/// the constrained-noise contraction experiments.
DirectionReport constrained_noise_report(const LoInstance& inst, const Vector& s,
                                         double mu, double max_err, Rng& rng);

}  // namespace dlbm
