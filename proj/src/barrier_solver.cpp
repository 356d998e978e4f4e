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

#include "dlbm/barrier_solver.hpp"

#include <cmath>
#include <limits>

namespace dlbm {

namespace {

void validate_config(const SolverConfig& config) {
  if (!(config.zeta > 0.0)) throw NumericalError("solver config: zeta must be positive");
  if (!(config.tau > 0.0 && config.tau <= 0.5))
    throw NumericalError("solver config: tau must lie in (0, 0.5]");
  if (!(config.theta >= 0.0 && config.theta < 1.0))
    throw NumericalError("solver config: theta must lie in [0, 1)");
  if (config.max_iters < 0) throw NumericalError("solver config: max_iters must be >= 0");
  if (!(config.oracle.noise_scale >= 0.0))
    throw NumericalError("solver config: noise_scale must be >= 0");
  if (!(config.oracle.cg_tolerance > 0.0))
    throw NumericalError("solver config: cg_tolerance must be positive");
}

AuditRecord make_audit(double delta_pre, const DirectionReport& report, bool interior,
                       double margin, double delta_post) {
  AuditRecord audit;
  audit.delta_pre = delta_pre;
  audit.err_norm = report.err_ds_scaled_norm;
  audit.err_ratio = delta_pre > 0.0 ? report.err_ds_scaled_norm / delta_pre : 0.0;
  audit.delta_post = delta_post;
  audit.min_slack_next = margin;
  audit.interior_ok = interior;
  audit.hypothesis_delta_ok = delta_pre <= 0.5;
  audit.hypothesis_err_ok = report.err_ds_scaled_norm <= 0.1 * delta_pre;
  audit.conclusion_ok = interior && delta_post <= 0.5;
  return audit;
}

bool accept_step(const AuditRecord& audit, bool strict_mode) {
  if (!audit.interior_ok) return false;
  if (strict_mode) return audit.passed();
  // Permissive mode enforces only the dual-feasibility bound of the
  // fixed-mu theorem, err <= delta^2 / 3, where it exceeds 0.1 delta.
  const double cap =
      std::max(0.1 * audit.delta_pre, audit.delta_pre * audit.delta_pre / 3.0);
  return audit.err_norm <= cap;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::IterationCap: return "IterationCap";
    case SolveStatus::StepRejected: return "StepRejected";
    case SolveStatus::InvalidStart: return "InvalidStart";
  }
  return "Unknown";
}

double resolved_theta(const SolverConfig& config, Index n) {
  return config.theta > 0.0 ? config.theta
                            : 1.0 / (4.0 * std::sqrt(static_cast<double>(n)));
}

int iteration_bound(Index n, double mu0, double zeta) {
  const double arg = static_cast<double>(n) * mu0 / zeta;
  if (!(arg > 1.0)) return 0;
  return static_cast<int>(
      std::ceil(4.0 * std::sqrt(static_cast<double>(n)) * std::log(arg)));
}

double reduce_mu(double mu, double theta) { return (1.0 - theta) * mu; }

NewtonOutcome newton_step(const LoInstance& inst, const DualIterate& iterate,
                          const SolverConfig& config, Rng& rng) {
  NewtonOutcome out;
  out.report = direction_report(inst, iterate.s, iterate.mu, config.oracle, rng);
  Vector y_next = iterate.y + out.report.dy_scaled;
  Vector s_next = dual_slack(inst, y_next);
  out.margin = s_next.minCoeff();
  out.interior = out.margin > 0.0;
  out.next = DualIterate{std::move(y_next), std::move(s_next), iterate.mu};
  return out;
}

NewtonOutcome newton_step(const LoInstance& inst, const DualIterate& iterate,
                          const SolverConfig& config) {
  Rng rng(config.oracle.seed);
  return newton_step(inst, iterate, config, rng);
}

AuditRecord audit_iteration(const LoInstance& inst, const DualIterate& iterate,
                            const DirectionReport& report, double theta) {
  const double delta_pre = proximity(inst, iterate.s, iterate.mu).delta;
  const Vector y_next = iterate.y + report.dy_scaled;
  const Vector s_next = dual_slack(inst, y_next);
  const double margin = s_next.minCoeff();
  const bool interior = margin > 0.0;
  double delta_post = std::numeric_limits<double>::infinity();
  if (interior)
    delta_post = proximity(inst, s_next, reduce_mu(iterate.mu, theta)).delta;
  return make_audit(delta_pre, report, interior, margin, delta_post);
}

SolveOutcome solve(const LoInstance& inst, const Vector& y0, double mu0,
                   const SolverConfig& config) {
  validate_config(config);
  if (!(mu0 > 0.0)) throw NumericalError("solve: mu0 must be positive");

  SolveOutcome out;
  out.result.status = SolveStatus::InvalidStart;
  out.result.y = y0;
  out.result.mu = mu0;

  const InteriorCheck check = is_interior_dual(inst, y0);
  if (!check.interior) {
    out.result.s = dual_slack(inst, y0);
    return out;
  }

  Vector y = y0;
  Vector s = dual_slack(inst, y0);
  double mu = mu0;
  ProximityReport prox = proximity(inst, s, mu);
  if (prox.delta > config.tau) {
    out.result.s = std::move(s);
    return out;
  }

  const double n = static_cast<double>(inst.n);
  const double theta = resolved_theta(config, inst.n);
  const int bound = iteration_bound(inst.n, mu0, config.zeta);
  const int max_iters =
      config.max_iters > 0 ? config.max_iters : std::max(1, 2 * bound);

  Rng rng(config.oracle.seed);
  double omega = s.lpNorm<Eigen::Infinity>();
  int k = 0;

  while (n * mu > config.zeta) {
    if (k >= max_iters) {
      out.result = {std::move(y), std::move(s), mu, k, SolveStatus::IterationCap};
      return out;
    }

    const double mu_next = reduce_mu(mu, theta);
    OracleConfig oracle = config.oracle;
    DirectionReport report;
    AuditRecord audit;
    ProximityReport prox_next;
    Vector y_next;
    Vector s_next;
    bool accepted = false;

    const int attempts = oracle.kind == OracleKind::Exact ? 1 : 2;
    for (int attempt = 0; attempt < attempts; ++attempt) {
      if (attempt > 0) {
        ++out.retries;
        if (oracle.kind == OracleKind::TruncatedCg) oracle.cg_tolerance /= 10.0;
        // Quantum kind simply re-queries; the generator has advanced.
      }
      report = direction_report(inst, s, mu, oracle, rng);
      y_next = y + report.dy_scaled;
      s_next = dual_slack(inst, y_next);
      const double margin = s_next.minCoeff();
      const bool interior = margin > 0.0;
      double delta_post = std::numeric_limits<double>::infinity();
      if (interior) {
        prox_next = proximity(inst, s_next, mu_next);
        delta_post = prox_next.delta;
      }
      audit = make_audit(prox.delta, report, interior, margin, delta_post);
      if (accept_step(audit, config.strict_mode)) {
        accepted = true;
        break;
      }
    }

    if (!accepted) {
      out.result = {std::move(y), std::move(s), mu, k, SolveStatus::StepRejected};
      return out;
    }

    omega = std::max(omega, s.lpNorm<Eigen::Infinity>());
    TraceRow row;
    row.k = k;
    row.mu = mu;
    row.delta = prox.delta;
    row.lambda_star = report.lambda_star;
    row.cos_psi = report.cos_psi;
    row.err_ratio = audit.err_ratio;
    row.gap = duality_gap(prox.x_of_s_mu.x, s);
    row.min_slack = s.minCoeff();
    row.kappa_as_inv = report.kappa_as_inv;
    row.omega = omega;
    out.trace.push_back(row);

    out.max_identity_gap =
        std::max(out.max_identity_gap,
                 std::abs(report.err_ds_scaled_norm -
                          report.delta_nes * report.sin_psi));

    y = std::move(y_next);
    s = std::move(s_next);
    mu = mu_next;
    prox = prox_next;
    ++k;
  }

  out.result = {std::move(y), std::move(s), mu, k, SolveStatus::Converged};
  return out;
}

}  // namespace dlbm
