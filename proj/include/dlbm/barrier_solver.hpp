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

#include "dlbm/lo_core.hpp"
#include "dlbm/nes_oracle.hpp"
#include "dlbm/types.hpp"

namespace dlbm {

struct SolverConfig {
  double zeta = 1e-6;       // target gap: stop once n mu <= zeta
  double theta = 0.0;       // barrier reduction; 0 resolves to 1/(4 sqrt(n))
  double tau = 0.5;         // admissible initial proximity
  int max_iters = 0;        // 0 resolves to 2 * iteration_bound
  bool strict_mode = true;  // audit delta <= 0.5 and err <= 0.1 delta each step
  OracleConfig oracle;
};

enum class SolveStatus { Converged, IterationCap, StepRejected, InvalidStart };

const char* to_string(SolveStatus status);

struct TraceRow {
  int k = 0;
  int round = 0;  // iterative-refinement round; 0 for a plain solve
  double mu = 0.0;
  double delta = 0.0;
  double lambda_star = 0.0;
  double cos_psi = 1.0;
  double err_ratio = 0.0;  // ||s^-1 E_ds|| / delta
  double gap = 0.0;        // s' x(s, mu)
  double min_slack = 0.0;
  double kappa_as_inv = 1.0;
  double omega = 0.0;  // running max of ||s^(k)||_inf
};

struct SolveResult {
  Vector y;
  Vector s;
  double mu = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::InvalidStart;
};

struct SolveOutcome {
  SolveResult result;
  std::vector<TraceRow> trace;
  int retries = 0;  // oracle re-queries triggered by audits
  double max_identity_gap = 0.0;  // max |err - delta sin(psi)| over iterations
};

/// Per-iteration check of the convergence theorem's hypotheses
/// (delta <= 0.5, err <= 0.1 delta) and conclusion (delta(s+, mu+) <= 0.5).
struct AuditRecord {
  double delta_pre = 0.0;
  double err_norm = 0.0;
  double err_ratio = 0.0;
  double delta_post = 0.0;      // at (s+, (1-theta) mu); NaN if s+ not interior
  double min_slack_next = 0.0;
  bool hypothesis_delta_ok = false;
  bool hypothesis_err_ok = false;
  bool conclusion_ok = false;
  bool interior_ok = false;
  bool passed() const {
    return hypothesis_delta_ok && hypothesis_err_ok && conclusion_ok && interior_ok;
  }
};

/// theta from the config, defaulting to 1/(4 sqrt(n)).
double resolved_theta(const SolverConfig& config, Index n);

/// ceil(4 sqrt(n) log(n mu0 / zeta)), the iteration bound; never negative.
int iteration_bound(Index n, double mu0, double zeta);

/// (1 - theta) mu.
double reduce_mu(double mu, double theta);

struct NewtonOutcome {
  DualIterate next;  // y+ = y + lambda* dybar, s+ = c - A'y+, mu unchanged
  DirectionReport report;
  bool interior = false;
  double margin = 0.0;
};

/// One full rescaled Newton step at fixed mu. The caller rejects non-interior
/// outcomes; the slack is reconstructed from y+, never updated incrementally.
NewtonOutcome newton_step(const LoInstance& inst, const DualIterate& iterate,
                          const SolverConfig& config, Rng& rng);
NewtonOutcome newton_step(const LoInstance& inst, const DualIterate& iterate,
                          const SolverConfig& config);

AuditRecord audit_iteration(const LoInstance& inst, const DualIterate& iterate,
                            const DirectionReport& report, double theta);

/// Main loop: while n mu > zeta, take a rescaled full Newton step from the
/// configured oracle, then reduce mu by (1 - theta). Strict mode audits every
/// iteration, re-queries the oracle once on failure (fresh draw for the
/// quantum kind, tolerance/10 for CG) and rejects on a second failure.
SolveOutcome solve(const LoInstance& inst, const Vector& y0, double mu0,
                   const SolverConfig& config);

}  // namespace dlbm
