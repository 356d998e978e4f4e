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

#include <vector>

#include "dlbm/barrier_solver.hpp"
#include "dlbm/types.hpp"

namespace dlbm {

struct RefineConfig {
  double zeta = 1e-8;      // final precision
  double zeta_hat = 1e-2;  // per-round precision; requires 0 < zeta <= zeta_hat < 1
  SolverConfig inner;      // template for the inner solves (zeta is overridden)
};

/// Refining problem for scaling factor nabla: same A, b scaled to nabla b,
/// c replaced by nabla s_k (the dual of min (nabla s_k)'x : Ax = nabla b).
LoInstance build_refining_instance(const LoInstance& inst, const Vector& s_k,
                                   double nabla);

struct WarmStart {
  Vector y_hat0;    // nabla (y0 - y_k)
  Vector s_hat0;    // nabla s0
  double mu_hat0;   // nabla^2 mu0
};

/// Interior feasible start for the refining problem; A'y_hat0 + s_hat0 equals
/// nabla s_k exactly and the refining proximity at mu_hat0 equals
/// delta(s0, mu0).
WarmStart warm_start(const Vector& y0, const Vector& y_k, const Vector& s0, double mu0,
                     double nabla);

struct RoundSummary {
  int round = 0;          // 1-based refining round; 0 is the initial solve
  int nabla_exponent = 0; // nabla = (1/zeta_hat)^exponent
  double nabla = 1.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::InvalidStart;
  double delta_ir_start = 0.0;    // measured on the refining problem
  double delta_orig_start = 0.0;  // delta(s0, mu0), for the warm-start identity
};

/// Gap certificate from the last round's primal projection mapped back to the
/// original problem.
struct Certificate {
  Vector x;
  double gap = 0.0;
  double primal_residual = 0.0;  // ||Ax - b||
  double min_x = 0.0;
};

struct RefineResult {
  Vector y;
  Vector s;
  int rounds = 0;  // refining rounds after the initial solve
  SolveStatus status = SolveStatus::InvalidStart;
  int failed_round = -1;  // set when an inner solve fails
  Certificate certificate;
  std::vector<TraceRow> trace;  // all rounds, round column set
  std::vector<RoundSummary> summaries;
  double kappa0 = 1.0;  // kappa(A S0^-1)^2 at the user's start
};

/// Outer driver: initial solve to zeta_hat, then refining rounds with
/// nabla = zeta_hat^-k, warm-started per the feasibility lemma, corrections
/// folded back as y <- y + y_hat / nabla until nabla >= 1/zeta.
RefineResult refine(const LoInstance& inst, const Vector& y0, const Vector& s0,
                    double mu0, const RefineConfig& config);

struct ConditionReport {
  double kappa0 = 1.0;  // kappa(A S^-1)^2 at round 0, iteration 0
  std::vector<std::pair<int, double>> per_round_max_ratio;
  double max_ratio = 1.0;
  bool flagged = false;
  double flag_threshold = 100.0;
};

/// Max-over-iterations kappa(A S^-1)^2 / kappa0 per round; flags (never
/// aborts) when the overall ratio exceeds the threshold.
ConditionReport condition_monitor(const std::vector<TraceRow>& round_traces,
                                  double flag_threshold = 100.0);

}  // namespace dlbm
