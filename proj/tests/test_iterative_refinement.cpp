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

#include <doctest.h>

#include <cmath>

#include "dlbm/instance_gen.hpp"
#include "dlbm/iterative_refinement.hpp"
#include "dlbm/lo_core.hpp"
#include "test_support.hpp"

using namespace dlbm;

namespace {

GeneratedProblem refine_problem(std::uint64_t seed, double delta0 = 0.25,
                                double kappa = 10.0) {
  GenSpec spec;
  spec.m = 6;
  spec.n = 36;
  spec.kappa_target = kappa;
  spec.delta0 = delta0;
  spec.seed = seed;
  return gen_centered(spec);
}

}  // namespace

TEST_CASE("build_refining_instance scales b and c as stated") {
  const LoInstance inst = test::t1();

  Vector s_k(2);
  s_k << 0.5, 0.5;
  const LoInstance scaled = build_refining_instance(inst, s_k, 100.0);
  CHECK(scaled.A == inst.A);
  CHECK(scaled.b[0] == 200.0);
  CHECK(scaled.c[0] == 50.0);
  CHECK(scaled.c[1] == 50.0);

  // nabla = 1 with s_k = s0 = c (y0 = 0) reproduces the original instance.
  const LoInstance same = build_refining_instance(inst, inst.c, 1.0);
  CHECK(same.b == inst.b);
  CHECK(same.c == inst.c);

  CHECK_THROWS_AS(build_refining_instance(inst, s_k, 0.5), NumericalError);
}

TEST_CASE("warm_start satisfies the feasibility lemma on T1") {
  Vector y0 = Vector::Zero(1);
  Vector y_k(1);
  y_k << 0.5;
  const Vector s0 = Vector::Ones(2);

  const WarmStart ws = warm_start(y0, y_k, s0, 1.0, 100.0);
  CHECK(ws.y_hat0[0] == -50.0);
  CHECK(ws.s_hat0[0] == 100.0);
  CHECK(ws.s_hat0[1] == 100.0);
  CHECK(ws.mu_hat0 == 10000.0);

  // A' y_hat0 + s_hat0 = nabla s_k with s_k = c - A'y_k = [0.5, 0.5].
  const LoInstance inst = test::t1();
  const Vector lhs = inst.A.transpose() * ws.y_hat0 + ws.s_hat0;
  CHECK(lhs[0] == 50.0);
  CHECK(lhs[1] == 50.0);

  // Zero-correction round: nabla = 1, y_k = y0.
  const WarmStart identity = warm_start(y0, y0, s0, 1.0, 1.0);
  CHECK(identity.y_hat0 == Vector::Zero(1));
  CHECK(identity.s_hat0 == s0);
  CHECK(identity.mu_hat0 == 1.0);
}

TEST_CASE("warm start proximity is scale invariant") {
  const GeneratedProblem p = refine_problem(8, 0.3);
  const LoInstance& inst = p.instance;
  const double delta_orig = proximity(inst, p.s0, p.mu0).delta;

  for (double nabla : {1.0, 1e2, 1e4}) {
    const LoInstance refining = build_refining_instance(inst, p.s0, nabla);
    const WarmStart ws = warm_start(p.y0, p.y0, p.s0, p.mu0, nabla);
    const double delta_ir = proximity(refining, ws.s_hat0, ws.mu_hat0).delta;
    CHECK(std::abs(delta_ir - delta_orig) <= 1e-8);
  }

  // Centered start: the identity holds at zero for every nabla.
  const GeneratedProblem centered = refine_problem(9, 0.0);
  for (double nabla : {1.0, 1e2, 1e4}) {
    const LoInstance refining =
        build_refining_instance(centered.instance, centered.s0, nabla);
    const WarmStart ws =
        warm_start(centered.y0, centered.y0, centered.s0, centered.mu0, nabla);
    CHECK(proximity(refining, ws.s_hat0, ws.mu_hat0).delta <= 1e-8);
  }
}

TEST_CASE("refine round counts follow ceil(log zeta / log zeta_hat)") {
  const GeneratedProblem p = refine_problem(10);
  RefineConfig config;
  config.zeta_hat = 1e-2;

  config.zeta = 1e-4;
  RefineResult result = refine(p.instance, p.y0, p.s0, p.mu0, config);
  CHECK(result.status == SolveStatus::Converged);
  CHECK(result.rounds == 2);

  config.zeta = 1e-2;  // zeta = zeta_hat: a single refining pass
  result = refine(p.instance, p.y0, p.s0, p.mu0, config);
  CHECK(result.status == SolveStatus::Converged);
  CHECK(result.rounds == 1);
}

TEST_CASE("refine reaches a high-precision certificate with warm-start identity") {
  const GeneratedProblem p = refine_problem(11);
  RefineConfig config;
  config.zeta = 1e-8;
  config.zeta_hat = 1e-2;

  const RefineResult result = refine(p.instance, p.y0, p.s0, p.mu0, config);
  REQUIRE(result.status == SolveStatus::Converged);
  CHECK(result.rounds == 4);  // nabla walks 1 -> 1e2 -> 1e4 -> 1e6 -> 1e8

  // Final dual feasibility for the original problem.
  CHECK(result.s.minCoeff() > 0.0);
  CHECK((result.s - dual_slack(p.instance, result.y)).norm() <=
        1e-10 * (1.0 + p.instance.c.norm()));

  // Gap certificate and primal quality.
  CHECK(result.certificate.gap <= 2.0 * config.zeta);
  CHECK(result.certificate.gap >= 0.0);
  CHECK(result.certificate.min_x >= -1e-10);
  CHECK(result.certificate.primal_residual <= 1e-6 * (1.0 + p.instance.b.norm()));

  // Warm-start identity per round.
  for (const RoundSummary& summary : result.summaries)
    CHECK(std::abs(summary.delta_ir_start - summary.delta_orig_start) <= 1e-8);

  // Trace rows are grouped by round with consecutive k inside each round.
  int round = 0;
  int expect_k = 0;
  for (const TraceRow& row : result.trace) {
    if (row.round != round) {
      CHECK(row.round == round + 1);
      round = row.round;
      expect_k = 0;
    }
    CHECK(row.k == expect_k);
    ++expect_k;
  }
  CHECK(round == 4);
}

TEST_CASE("refine propagates inner failures with the round index") {
  const GeneratedProblem p = refine_problem(12);
  RefineConfig config;
  config.zeta = 1e-4;
  config.zeta_hat = 1e-2;
  config.inner.max_iters = 2;  // far below what any round needs

  const RefineResult result = refine(p.instance, p.y0, p.s0, p.mu0, config);
  CHECK(result.status == SolveStatus::IterationCap);
  CHECK(result.failed_round == 0);
}

TEST_CASE("refine validates its configuration and start") {
  const GeneratedProblem p = refine_problem(13);
  RefineConfig config;
  config.zeta = 1e-1;  // > zeta_hat
  config.zeta_hat = 1e-2;
  CHECK_THROWS_AS(refine(p.instance, p.y0, p.s0, p.mu0, config), NumericalError);

  config.zeta = 1e-4;
  Vector wrong_s = p.s0;
  wrong_s[0] += 0.5;
  CHECK_THROWS_AS(refine(p.instance, p.y0, wrong_s, p.mu0, config), NumericalError);
}

TEST_CASE("condition monitor reports per-round ratios without aborting") {
  const GeneratedProblem p = refine_problem(14);
  RefineConfig config;
  config.zeta = 1e-4;
  config.zeta_hat = 1e-2;
  const RefineResult result = refine(p.instance, p.y0, p.s0, p.mu0, config);
  REQUIRE(result.status == SolveStatus::Converged);

  const ConditionReport report = condition_monitor(result.trace);
  CHECK(report.kappa0 ==
        result.trace.front().kappa_as_inv * result.trace.front().kappa_as_inv);
  CHECK(report.per_round_max_ratio.size() == 3);  // initial solve + 2 rounds
  CHECK(report.per_round_max_ratio.front().second >= 1.0);
  CHECK(report.max_ratio >= 1.0);

  CHECK_THROWS_AS(condition_monitor({}), NumericalError);
}

TEST_CASE("condition monitor flags an adversarially conditioned instance") {
  const GeneratedProblem p = refine_problem(15, 0.0, 1e6);
  RefineConfig config;
  config.zeta = 1e-4;
  config.zeta_hat = 1e-2;
  const RefineResult result = refine(p.instance, p.y0, p.s0, p.mu0, config);
  REQUIRE(result.status == SolveStatus::Converged);  // flagged, never aborted

  const ConditionReport tight = condition_monitor(result.trace, 0.5);
  CHECK(tight.flagged);
  CHECK(tight.max_ratio > 0.0);
}
