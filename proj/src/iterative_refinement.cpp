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

#include "dlbm/iterative_refinement.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "dlbm/lo_core.hpp"

namespace dlbm {

namespace {

void validate_config(const RefineConfig& config) {
  if (!(config.zeta > 0.0)) throw NumericalError("refine config: zeta must be positive");
  if (!(config.zeta_hat < 1.0))
    throw NumericalError("refine config: zeta_hat must be < 1");
  if (!(config.zeta <= config.zeta_hat))
    throw NumericalError("refine config: zeta must not exceed zeta_hat");
}

double nabla_value(double zeta_hat, int exponent) {
  return std::pow(1.0 / zeta_hat, exponent);
}

double kappa_as_inv(const LoInstance& inst, const Vector& s) {
  const Matrix factor = inst.A * s.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Matrix> svd(factor);
  return svd.singularValues()(0) / svd.singularValues()(inst.m - 1);
}

void append_trace(std::vector<TraceRow>* out, const std::vector<TraceRow>& rows,
                  int round) {
  for (TraceRow row : rows) {
    row.round = round;
    out->push_back(row);
  }
}

}  // namespace

LoInstance build_refining_instance(const LoInstance& inst, const Vector& s_k,
                                   double nabla) {
  if (s_k.size() != inst.n) throw DimensionError("s_k length does not match instance");
  if (s_k.minCoeff() <= 0.0)
    throw NumericalError("refining instance requires strictly positive s_k");
  if (!(nabla >= 1.0)) throw NumericalError("refining instance requires nabla >= 1");
  return LoInstance::make(inst.A, nabla * inst.b, nabla * s_k);
}

WarmStart warm_start(const Vector& y0, const Vector& y_k, const Vector& s0, double mu0,
                     double nabla) {
  if (y0.size() != y_k.size()) throw DimensionError("warm start: y length mismatch");
  return {nabla * (y0 - y_k), nabla * s0, nabla * nabla * mu0};
}

RefineResult refine(const LoInstance& inst, const Vector& y0, const Vector& s0_in,
                    double mu0, const RefineConfig& config) {
  validate_config(config);

  // Reconstruct the slack; a drifted user-supplied s0 would leak into every
  // warm start through nabla * s0.
  const Vector s0 = dual_slack(inst, y0);
  if ((s0 - s0_in).norm() > 1e-10 * (1.0 + inst.c.norm()))
    throw NumericalError("refine: supplied s0 is inconsistent with c - A'y0");

  RefineResult result;
  result.kappa0 = std::pow(kappa_as_inv(inst, s0), 2.0);

  SolverConfig inner = config.inner;
  inner.zeta = config.zeta_hat;

  // Initial solve of the original dual to precision zeta_hat.
  SolveOutcome outcome = solve(inst, y0, mu0, inner);
  append_trace(&result.trace, outcome.trace, 0);
  {
    RoundSummary summary;
    summary.round = 0;
    summary.nabla = 1.0;
    summary.iterations = outcome.result.iterations;
    summary.status = outcome.result.status;
    summary.delta_ir_start = proximity(inst, dual_slack(inst, y0), mu0).delta;
    summary.delta_orig_start = summary.delta_ir_start;
    result.summaries.push_back(summary);
  }
  if (outcome.result.status != SolveStatus::Converged) {
    result.status = outcome.result.status;
    result.failed_round = 0;
    result.y = outcome.result.y;
    result.s = outcome.result.s;
    return result;
  }

  Vector y_k = outcome.result.y;
  Vector s_k = dual_slack(inst, y_k);
  const double delta_orig = proximity(inst, dual_slack(inst, y0), mu0).delta;

  LoInstance last_refining = inst;
  SolveResult last_inner = outcome.result;
  double last_nabla = 1.0;

  int exponent = 0;
  while (nabla_value(config.zeta_hat, exponent) < 1.0 / config.zeta) {
    ++exponent;
    const double nabla = nabla_value(config.zeta_hat, exponent);
    const LoInstance refining = build_refining_instance(inst, s_k, nabla);
    const WarmStart ws = warm_start(y0, y_k, s0, mu0, nabla);

    RoundSummary summary;
    summary.round = exponent;
    summary.nabla_exponent = exponent;
    summary.nabla = nabla;
    summary.delta_orig_start = delta_orig;
    summary.delta_ir_start = proximity(refining, ws.s_hat0, ws.mu_hat0).delta;

    SolveOutcome inner_outcome = solve(refining, ws.y_hat0, ws.mu_hat0, inner);
    summary.iterations = inner_outcome.result.iterations;
    summary.status = inner_outcome.result.status;
    result.summaries.push_back(summary);
    append_trace(&result.trace, inner_outcome.trace, exponent);

    if (inner_outcome.result.status != SolveStatus::Converged) {
      result.status = inner_outcome.result.status;
      result.failed_round = exponent;
      result.y = y_k;
      result.s = s_k;
      result.rounds = exponent - 1;
      return result;
    }

    y_k += inner_outcome.result.y / nabla;
    // Induction-lemma identity s^(k+1) = s_hat / nabla: unlike c - A'y_k it
    // keeps the tiny slack entries at full relative accuracy once they drop
    // below the cancellation noise of the O(1) subtraction.
    s_k = inner_outcome.result.s / nabla;
    if (s_k.minCoeff() <= 0.0)
      throw NumericalError("refinement produced a non-interior outer iterate");
    if ((s_k - dual_slack(inst, y_k)).norm() > 1e-10 * (1.0 + inst.c.norm()))
      throw NumericalError("refinement outer slack drifted from c - A'y");

    last_refining = refining;
    last_inner = inner_outcome.result;
    last_nabla = nabla;
    result.rounds = exponent;
  }

  // Certificate: primal projection of the last inner solve mapped back by
  // 1/nabla; its gap against the final dual slack is the claimed bound.
  const ProximityReport final_prox =
      proximity(last_refining, last_inner.s, last_inner.mu);
  result.certificate.x = final_prox.x_of_s_mu.x / last_nabla;
  result.certificate.gap = duality_gap(result.certificate.x, s_k);
  result.certificate.primal_residual = (inst.A * result.certificate.x - inst.b).norm();
  result.certificate.min_x = result.certificate.x.minCoeff();

  result.y = std::move(y_k);
  result.s = std::move(s_k);
  result.status = SolveStatus::Converged;
  return result;
}

ConditionReport condition_monitor(const std::vector<TraceRow>& round_traces,
                                  double flag_threshold) {
  if (round_traces.empty())
    throw NumericalError("condition monitor requires a nonempty trace");

  ConditionReport report;
  report.flag_threshold = flag_threshold;
  report.kappa0 = round_traces.front().kappa_as_inv * round_traces.front().kappa_as_inv;

  int current_round = round_traces.front().round;
  double current_max = 0.0;
  auto flush = [&](int round) {
    report.per_round_max_ratio.emplace_back(round, current_max / report.kappa0);
    report.max_ratio = std::max(report.max_ratio, current_max / report.kappa0);
  };
  for (const TraceRow& row : round_traces) {
    if (row.round != current_round) {
      flush(current_round);
      current_round = row.round;
      current_max = 0.0;
    }
    current_max = std::max(current_max, row.kappa_as_inv * row.kappa_as_inv);
  }
  flush(current_round);

  report.flagged = report.max_ratio > flag_threshold;
  return report;
}

}  // namespace dlbm
