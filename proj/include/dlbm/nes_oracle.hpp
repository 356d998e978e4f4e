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

#include "dlbm/rng.hpp"
#include "dlbm/types.hpp"

namespace dlbm {

// Prop. 1 constant: the admissible tomography error is
// (0.005/1.995) / kappa(A S^-1).
inline constexpr double kNoiseBudgetFactor = 0.005 / 1.995;

/// Normal equation system (A S^-2 A') dy = r_p / mu in factored form.
struct NesSystem {
  Matrix matrix_factor;  // A S^-1 (m x n); the coefficient matrix is B B'
  Vector rhs_raw;        // r_p = b - mu A S^-1 e
  double mu = 0.0;
  Vector rhs_scaled;     // r_p / mu
};

enum class OracleKind { Exact, TruncatedCg, SimulatedQuantum };

struct OracleConfig {
  OracleKind kind = OracleKind::Exact;
  double noise_scale = 1.0;    // fraction of the kappa-dependent budget, in [0, 1] nominally
  double cg_tolerance = 1e-2;  // relative NES residual stop for the CG oracle
  std::uint64_t seed = kDefaultSeed;
};

/// Everything the solver and the audits need about one direction query.
struct DirectionReport {
  Vector dy_unit;       // unit oracle direction
  double lambda_star = 0.0;
  Vector dy_scaled;     // lambda_star * dy_unit
  Vector ds_scaled;     // -A' dy_scaled
  Vector dy_exact;      // reference NES solution
  double delta_nes = 0.0;           // ||S^-1 A' dy_exact||
  double err_ds_scaled_norm = 0.0;  // ||s^-1 (ds_scaled - ds_exact)||
  double cos_psi = 1.0;
  double sin_psi = 0.0;
  double kappa_as_inv = 1.0;  // kappa(A S^-1)
  double noise_budget = 0.0;  // kNoiseBudgetFactor / kappa_as_inv
  bool zero_rhs = false;      // r_p = 0 short circuit; all direction fields zero
};

NesSystem assemble_nes(const LoInstance& inst, const Vector& s, double mu);

/// Reference solution dy = (1/mu) (B B')^-1 r_p via QR of B' and two
/// triangular solves. Throws NumericalError if the factor is rank deficient.
Vector solve_exact(const NesSystem& nes);

/// Unit direction per the configured oracle. Exact: dy/||dy||. Truncated CG:
/// normalized CG iterate stopped at cg_tolerance on the relative NES residual.
/// Simulated quantum: dy/||dy|| perturbed on a sphere of radius
/// noise_scale * budget / 2 and renormalized, which keeps the deviation from
/// the exact unit direction within noise_scale * budget.
/// Precondition: r_p != 0 (callers short-circuit dy = 0).
Vector oracle_direction(const NesSystem& nes, const OracleConfig& config, Rng& rng);
Vector oracle_direction(const NesSystem& nes, const OracleConfig& config);

/// lambda* minimizing ||S^-1 A'(dy - lambda dybar)|| over lambda.
double rescale_lambda_star(const NesSystem& nes, const Vector& dy_unit);

/// Full direction query with diagnostics; deterministic for a fixed seed.
DirectionReport direction_report(const LoInstance& inst, const Vector& s, double mu,
                                 const OracleConfig& config, Rng& rng);
DirectionReport direction_report(const LoInstance& inst, const Vector& s, double mu,
                                 const OracleConfig& config);

/// (0.005/1.995) / kappa(A S^-1), kappa by dense SVD.
double noise_budget(const LoInstance& inst, const Vector& s);

/// kappa(S^-2) = (max_i s_i / min_i s_i)^2, the scaling diagnostic.
double kappa_slack_sq(const Vector& s);

}  // namespace dlbm
