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

// Acceptance suite: every release-gating claim, one pass/fail line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "dlbm/barrier_solver.hpp"
#include "dlbm/instance_gen.hpp"
#include "dlbm/io.hpp"
#include "dlbm/iterative_refinement.hpp"
#include "dlbm/lo_core.hpp"
#include "dlbm/verify.hpp"

using namespace dlbm;

namespace {

int failures = 0;

void report(const std::string& id, bool passed, const std::string& detail) {
  if (!passed) ++failures;
  std::printf("[%s] %s: %s\n", passed ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// C1: exact-oracle iteration bound on the scaling suite, under 60 s.
void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SuiteCase> cases = gen_suite(SuiteName::Scaling, kDefaultSeed);
  bool ok = true;
  std::ostringstream detail;
  for (const SuiteCase& c : cases) {
    SolverConfig config;
    config.zeta = 1e-6;
    const SolveOutcome outcome =
        solve(c.problem.instance, c.problem.y0, c.problem.mu0, config);
    const int bound = iteration_bound(c.problem.instance.n, c.problem.mu0, 1e-6);
    const bool this_ok = outcome.result.status == SolveStatus::Converged &&
                         outcome.result.iterations <= bound;
    ok = ok && this_ok;
    detail << "n=" << c.problem.instance.n << " " << outcome.result.iterations << "/"
           << bound << " ";
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 60.0;
  detail << "(" << std::fixed << elapsed << "s < 60s)";
  report("C1 iteration bound, exact oracle", ok, detail.str());
}

// C2: same bound with the quantum oracle at noise_scale 1, 10 seeds per
// instance; every audit passes and the terminal gap is within 2 zeta.
// Returns the worst identity gap for C6.
double criterion2() {
  const std::vector<SuiteCase> cases = gen_suite(SuiteName::Scaling, kDefaultSeed);
  bool ok = true;
  double max_identity = 0.0;
  int runs = 0;
  int total_retries = 0;
  std::ostringstream detail;
  for (const SuiteCase& c : cases) {
    const int bound = iteration_bound(c.problem.instance.n, c.problem.mu0, 1e-6);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SolverConfig config;
      config.zeta = 1e-6;
      config.oracle.kind = OracleKind::SimulatedQuantum;
      config.oracle.noise_scale = 1.0;
      config.oracle.seed = kDefaultSeed + seed;
      const SolveOutcome outcome =
          solve(c.problem.instance, c.problem.y0, c.problem.mu0, config);
      ++runs;
      total_retries += outcome.retries;
      max_identity = std::max(max_identity, outcome.max_identity_gap);

      bool this_ok = outcome.result.status == SolveStatus::Converged &&
                     outcome.result.iterations <= bound;
      for (const TraceRow& row : outcome.trace)
        this_ok = this_ok && row.delta <= 0.5 && row.err_ratio <= 0.1;
      if (this_ok) {
        const ProximityReport prox =
            proximity(c.problem.instance, outcome.result.s, outcome.result.mu);
        const double gap = duality_gap(prox.x_of_s_mu.x, outcome.result.s);
        this_ok = gap <= 2.0 * config.zeta;
      }
      if (!this_ok && ok) {
        detail << "first failure at n=" << c.problem.instance.n << " seed=" << seed
               << " ";
        ok = false;
      }
    }
  }
  detail << runs << " runs converged with all audits passing, retries="
         << total_retries;
  report("C2 iteration bound, quantum oracle x10 seeds", ok, detail.str());
  return max_identity;
}

// C3: quadratic contraction at fixed mu, exact and constrained-noise oracles.
// Returns the worst identity gap for C6.
double criterion3() {
  bool ok = true;
  double max_identity = 0.0;
  double worst_exact = 0.0;
  double worst_noisy = 0.0;
  Rng rng(kDefaultSeed);
  for (int trial = 0; trial < 20; ++trial) {
    GenSpec spec;
    spec.m = 2 + trial % 6;
    spec.n = spec.m * 5;
    spec.kappa_target = std::pow(10.0, 1.5 * (trial % 4) / 3.0);
    spec.delta0 = 0.40 + 0.1 * (trial / 20.0);
    spec.seed = kDefaultSeed + 100 + static_cast<std::uint64_t>(trial);
    const GeneratedProblem p = gen_centered(spec);
    const LoInstance& inst = p.instance;
    const double mu = p.mu0;

    for (int noisy = 0; noisy < 2; ++noisy) {
      Vector y = p.y0;
      Vector s = p.s0;
      double delta = proximity(inst, s, mu).delta;
      for (int step = 0; step < 60 && delta >= 1e-6; ++step) {
        DirectionReport rep;
        if (noisy) {
          rep = constrained_noise_report(inst, s, mu, delta * delta / 3.0, rng);
        } else {
          rep = direction_report(inst, s, mu, OracleConfig{}, rng);
        }
        max_identity = std::max(
            max_identity,
            std::abs(rep.err_ds_scaled_norm - rep.delta_nes * rep.sin_psi));
        y += rep.dy_scaled;
        s = dual_slack(inst, y);
        if (s.minCoeff() <= 0.0) {
          ok = false;
          break;
        }
        const double delta_next = proximity(inst, s, mu).delta;
        const double factor = noisy ? 1.5 : 1.0;
        const double slack = delta_next - factor * delta * delta;
        (noisy ? worst_noisy : worst_exact) =
            std::max(noisy ? worst_noisy : worst_exact, slack);
        if (slack > 1e-8) ok = false;
        delta = delta_next;
      }
      if (delta >= 1e-6) ok = false;  // chain must reach the floor
    }
  }
  std::ostringstream detail;
  detail << "20 instances; worst exact slack " << format_double(worst_exact)
         << ", worst noisy slack " << format_double(worst_noisy) << " (<= 1e-8)";
  report("C3 quadratic contraction at fixed mu", ok, detail.str());
  return max_identity;
}

// C4: Prop-1 budget samples, 10 instances x 1000 draws, under 30 s.
void criterion4() {
  const auto start = std::chrono::steady_clock::now();
  const SuiteResult result = verify_prop1(kDefaultSeed);
  const double elapsed = seconds_since(start);
  const bool ok = result.failures == 0 && result.trials == 10000 && elapsed < 30.0;
  std::ostringstream detail;
  detail << result.trials - result.failures << "/" << result.trials
         << " samples with cos(psi) >= 0.995 (" << std::fixed << elapsed
         << "s < 30s)";
  report("C4 Prop-1 noise budget", ok, detail.str());
}

// C5: lambda* optimality against the perturbation grid.
void criterion5() {
  const SuiteResult result = verify_lambda(kDefaultSeed);
  std::ostringstream detail;
  detail << result.trials - result.failures << "/" << result.trials
         << " pairs optimal, max orthogonality residual "
         << format_double(result.max_violation) << " (<= 1e-10)";
  report("C5 lambda* optimality", result.failures == 0 && result.trials == 100,
         detail.str());
}

// C6: the identity ||s^-1 E_ds|| = delta sin(psi) across criteria 2-3.
void criterion6(double max_identity) {
  std::ostringstream detail;
  detail << "max |err - delta sin(psi)| = " << format_double(max_identity)
         << " (<= 1e-8)";
  report("C6 error-angle identity", max_identity <= 1e-8, detail.str());
}

// C7: iterative refinement on the (8,64) instance.
void criterion7() {
  GenSpec spec;
  spec.m = 8;
  spec.n = 64;
  spec.kappa_target = 10.0;
  spec.delta0 = 0.25;
  spec.seed = kDefaultSeed;
  const GeneratedProblem p = gen_centered(spec);

  RefineConfig config;
  config.zeta = 1e-8;
  config.zeta_hat = 1e-2;
  const RefineResult result = refine(p.instance, p.y0, p.s0, p.mu0, config);

  bool ok = result.status == SolveStatus::Converged && result.rounds == 4;
  double worst_identity = 0.0;
  for (const RoundSummary& summary : result.summaries)
    worst_identity = std::max(
        worst_identity, std::abs(summary.delta_ir_start - summary.delta_orig_start));
  ok = ok && worst_identity <= 1e-8;
  ok = ok && result.s.minCoeff() > 0.0;
  ok = ok && (result.s - dual_slack(p.instance, result.y)).norm() <=
                 1e-10 * (1.0 + p.instance.c.norm());
  ok = ok && result.certificate.gap >= 0.0 && result.certificate.gap <= 2e-8;

  std::ostringstream detail;
  detail << "rounds=" << result.rounds << " (expected 4), gap certificate "
         << format_double(result.certificate.gap)
         << " (<= 2e-8), warm-start identity gap " << format_double(worst_identity);
  report("C7 iterative refinement", ok, detail.str());
}

// C8: Lemma-8 and condition-number property suites.
void criterion8() {
  const SuiteResult lemma8 = verify_lemma8(kDefaultSeed);
  const SuiteResult cond = verify_cond(kDefaultSeed);
  const bool ok = lemma8.failures == 0 && lemma8.trials == 500 &&
                  cond.failures == 0 && cond.trials == 500;
  std::ostringstream detail;
  detail << "lemma8 " << lemma8.trials - lemma8.failures << "/" << lemma8.trials
         << ", cond " << cond.trials - cond.failures << "/" << cond.trials
         << ", max violations " << format_double(lemma8.max_violation) << " / "
         << format_double(cond.max_violation);
  report("C8 Lemma-8 and conditioning property suites", ok, detail.str());
}

// C9: verify-all determinism at the documented seed.
void criterion9() {
  const std::string first = aggregate_csv(run_verify("all", 857521));
  const std::string second = aggregate_csv(run_verify("all", 857521));
  std::ostringstream detail;
  detail << "aggregate CSV " << first.size() << " bytes, repeated run "
         << (first == second ? "identical" : "DIFFERS");
  report("C9 verify-all determinism", !first.empty() && first == second,
         detail.str());
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion1();
  const double id2 = criterion2();
  const double id3 = criterion3();
  criterion4();
  criterion5();
  criterion6(std::max(id2, id3));
  criterion7();
  criterion8();
  criterion9();
  std::printf("acceptance: %d/9 criteria passed in %.1fs\n", 9 - failures,
              seconds_since(start));
  return failures == 0 ? 0 : 1;
}
