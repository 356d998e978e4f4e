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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "dlbm/barrier_solver.hpp"
#include "dlbm/instance_gen.hpp"
#include "dlbm/io.hpp"
#include "dlbm/iterative_refinement.hpp"
#include "dlbm/lo_core.hpp"
#include "dlbm/verify.hpp"

namespace {

// Stable exit-code contract.
constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitInvalidStart = 3;
constexpr int kExitStepRejected = 4;
constexpr int kExitIterationCap = 5;

int status_exit_code(dlbm::SolveStatus status) {
  switch (status) {
    case dlbm::SolveStatus::Converged: return kExitOk;
    case dlbm::SolveStatus::InvalidStart: return kExitInvalidStart;
    case dlbm::SolveStatus::StepRejected: return kExitStepRejected;
    case dlbm::SolveStatus::IterationCap: return kExitIterationCap;
  }
  return kExitBadArgs;
}

dlbm::OracleKind parse_oracle(const std::string& name) {
  if (name == "exact") return dlbm::OracleKind::Exact;
  if (name == "cg") return dlbm::OracleKind::TruncatedCg;
  if (name == "quantum") return dlbm::OracleKind::SimulatedQuantum;
  throw CLI::ValidationError("--oracle", "must be one of exact|cg|quantum");
}

struct SolveFlags {
  std::string instance_path;
  std::string trace_path;
  std::string oracle = "exact";
  double zeta = 1e-6;
  double noise_scale = 1.0;
  double cg_tol = 1e-2;
  double tau = 0.5;
  std::uint64_t seed = dlbm::kDefaultSeed;
  int max_iters = 0;
  bool permissive = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags* flags) {
  cmd->add_option("instance", flags->instance_path, "instance file (JSON)")->required();
  cmd->add_option("--zeta", flags->zeta, "target gap: stop once n*mu <= zeta");
  cmd->add_option("--oracle", flags->oracle, "exact|cg|quantum");
  cmd->add_option("--noise-scale", flags->noise_scale,
                  "quantum oracle noise as a fraction of the budget");
  cmd->add_option("--cg-tol", flags->cg_tol, "CG relative residual tolerance");
  cmd->add_option("--tau", flags->tau, "admissible initial proximity");
  cmd->add_option("--seed", flags->seed, "oracle seed");
  cmd->add_option("--max-iters", flags->max_iters, "iteration cap (0 = 2x bound)");
  cmd->add_option("--trace", flags->trace_path, "write the iteration trace CSV here");
  cmd->add_flag("--permissive", flags->permissive,
                "disable the strict per-iteration audits");
}

dlbm::SolverConfig solver_config(const SolveFlags& flags) {
  dlbm::SolverConfig config;
  config.zeta = flags.zeta;
  config.tau = flags.tau;
  config.max_iters = flags.max_iters;
  config.strict_mode = !flags.permissive;
  config.oracle.kind = parse_oracle(flags.oracle);
  config.oracle.noise_scale = flags.noise_scale;
  config.oracle.cg_tolerance = flags.cg_tol;
  config.oracle.seed = flags.seed;
  return config;
}

dlbm::InstanceDoc load_with_start(const std::string& path) {
  dlbm::InstanceDoc doc = dlbm::read_instance(path);
  if (!doc.has_start())
    throw dlbm::NumericalError("instance file lacks start data (y0, mu0): " + path);
  return doc;
}

int cmd_generate(Eigen::Index m, Eigen::Index n, double mu0, double kappa,
                 double delta0, std::uint64_t seed, const std::string& out) {
  dlbm::GenSpec spec;
  spec.m = m;
  spec.n = n;
  spec.mu0 = mu0;
  spec.kappa_target = kappa;
  spec.delta0 = delta0;
  spec.seed = seed;
  const dlbm::GeneratedProblem problem = dlbm::gen_centered(spec);
  dlbm::write_instance(out, dlbm::to_doc(problem));

  const double measured =
      dlbm::proximity(problem.instance, problem.s0, problem.mu0).delta;
  std::cout << "generated m=" << m << " n=" << n << " kappa=" << kappa
            << " delta0=" << dlbm::format_double(measured) << " -> " << out << "\n";
  return kExitOk;
}

int cmd_solve(const SolveFlags& flags) {
  const dlbm::InstanceDoc doc = load_with_start(flags.instance_path);
  const dlbm::SolverConfig config = solver_config(flags);
  const dlbm::SolveOutcome outcome =
      dlbm::solve(doc.instance, *doc.y0, *doc.mu0, config);

  if (!flags.trace_path.empty()) dlbm::write_trace(flags.trace_path, outcome.trace);

  double gap = std::numeric_limits<double>::quiet_NaN();
  if (outcome.result.status == dlbm::SolveStatus::Converged) {
    const dlbm::ProximityReport prox =
        dlbm::proximity(doc.instance, outcome.result.s, outcome.result.mu);
    gap = dlbm::duality_gap(prox.x_of_s_mu.x, outcome.result.s);
  }
  std::cout << "status: " << dlbm::to_string(outcome.result.status)
            << "  iterations: " << outcome.result.iterations << "  bound: "
            << dlbm::iteration_bound(doc.instance.n, *doc.mu0, flags.zeta)
            << "  final_gap: " << dlbm::format_double(gap)
            << "  retries: " << outcome.retries << "\n";
  return status_exit_code(outcome.result.status);
}

int cmd_refine(const SolveFlags& flags, double zeta_hat) {
  if (flags.zeta > zeta_hat) throw CLI::ValidationError("--zeta", "requires zeta <= zeta-hat");
  const dlbm::InstanceDoc doc = load_with_start(flags.instance_path);

  dlbm::RefineConfig config;
  config.zeta = flags.zeta;
  config.zeta_hat = zeta_hat;
  config.inner = solver_config(flags);

  const dlbm::Vector s0 = dlbm::dual_slack(doc.instance, *doc.y0);
  const dlbm::RefineResult result =
      dlbm::refine(doc.instance, *doc.y0, s0, *doc.mu0, config);

  if (!flags.trace_path.empty()) dlbm::write_trace(flags.trace_path, result.trace);

  std::cout << "status: " << dlbm::to_string(result.status)
            << "  rounds: " << result.rounds << "  expected_rounds: "
            << static_cast<long>(std::ceil(std::log(1.0 / flags.zeta) /
                                           std::log(1.0 / zeta_hat)))
            << "  gap_certificate: " << dlbm::format_double(result.certificate.gap)
            << "  primal_residual: "
            << dlbm::format_double(result.certificate.primal_residual) << "\n";
  if (result.status != dlbm::SolveStatus::Converged)
    std::cout << "failed_round: " << result.failed_round << "\n";
  return status_exit_code(result.status);
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
  const std::vector<dlbm::SuiteResult> results = dlbm::run_verify(suite, seed);
  bool all_ok = true;
  std::printf("%-12s %8s %8s %14s  %s\n", "suite", "trials", "failures",
              "max_violation", "result");
  for (const dlbm::SuiteResult& r : results) {
    all_ok = all_ok && r.passed();
    std::printf("%-12s %8ld %8ld %14s  %s\n", r.name.c_str(), r.trials, r.failures,
                dlbm::format_double(r.max_violation).c_str(),
                r.passed() ? "pass" : "FAIL");
  }
  if (!out.empty()) {
    std::ofstream file(out);
    if (!file) throw dlbm::NumericalError("cannot open aggregate CSV: " + out);
    file << dlbm::aggregate_csv(results);
  }
  return all_ok ? kExitOk : 1;
}

int cmd_experiment(const std::string& name, const std::string& out_dir, double zeta,
                   std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const dlbm::SuiteName suite = dlbm::parse_suite_name(name);
  const std::vector<dlbm::SuiteCase> cases = dlbm::gen_suite(suite, seed);

  std::ofstream agg(fs::path(out_dir) / (name + ".csv"));
  if (!agg) throw dlbm::NumericalError("cannot open aggregate CSV in " + out_dir);

  switch (suite) {
    case dlbm::SuiteName::Scaling: {
      agg << "n,iterations,bound,ratio\n";
      for (const dlbm::SuiteCase& c : cases) {
        dlbm::SolverConfig config;
        config.zeta = zeta;
        config.oracle.seed = seed;
        const dlbm::SolveOutcome outcome =
            dlbm::solve(c.problem.instance, c.problem.y0, c.problem.mu0, config);
        dlbm::write_trace((fs::path(out_dir) / (c.label + ".csv")).string(),
                          outcome.trace);
        const double n = static_cast<double>(c.problem.instance.n);
        const double denom = std::sqrt(n) * std::log(n * c.problem.mu0 / zeta);
        agg << c.problem.instance.n << ',' << outcome.result.iterations << ','
            << dlbm::iteration_bound(c.problem.instance.n, c.problem.mu0, zeta) << ','
            << dlbm::format_double(outcome.result.iterations / denom) << "\n";
        std::cout << c.label << ": " << dlbm::to_string(outcome.result.status) << " in "
                  << outcome.result.iterations << " iterations\n";
      }
      break;
    }
    case dlbm::SuiteName::Conditioning: {
      agg << "kappa_target,kappa_as_inv,budget,budget_times_kappa\n";
      for (const dlbm::SuiteCase& c : cases) {
        const double budget =
            dlbm::noise_budget(c.problem.instance, c.problem.s0);
        const dlbm::DirectionReport rep = dlbm::direction_report(
            c.problem.instance, c.problem.s0, c.problem.mu0, dlbm::OracleConfig{});
        agg << c.label << ',' << dlbm::format_double(rep.kappa_as_inv) << ','
            << dlbm::format_double(budget) << ','
            << dlbm::format_double(budget * rep.kappa_as_inv) << "\n";
        std::cout << c.label << ": budget " << dlbm::format_double(budget) << "\n";
      }
      break;
    }
    case dlbm::SuiteName::NoiseSweep: {
      agg << "noise_scale,status,iterations,mean_err_ratio,max_err_ratio\n";
      for (const dlbm::SuiteCase& c : cases) {
        dlbm::SolverConfig config;
        config.zeta = zeta;
        config.strict_mode = false;  // let over-budget runs play out
        config.oracle.kind = dlbm::OracleKind::SimulatedQuantum;
        config.oracle.noise_scale = c.noise_scale;
        config.oracle.seed = seed;
        const dlbm::SolveOutcome outcome =
            dlbm::solve(c.problem.instance, c.problem.y0, c.problem.mu0, config);
        dlbm::write_trace((fs::path(out_dir) / (c.label + ".csv")).string(),
                          outcome.trace);
        double mean = 0.0;
        double max = 0.0;
        for (const dlbm::TraceRow& row : outcome.trace) {
          mean += row.err_ratio;
          max = std::max(max, row.err_ratio);
        }
        if (!outcome.trace.empty()) mean /= static_cast<double>(outcome.trace.size());
        agg << dlbm::format_double(c.noise_scale) << ','
            << dlbm::to_string(outcome.result.status) << ','
            << outcome.result.iterations << ',' << dlbm::format_double(mean) << ','
            << dlbm::format_double(max) << "\n";
        std::cout << c.label << ": " << dlbm::to_string(outcome.result.status)
                  << " mean err_ratio " << dlbm::format_double(mean) << "\n";
      }
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual logarithmic barrier LO solver with pluggable NES oracles"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate an instance with a certified start");
  Eigen::Index gen_m = 4, gen_n = 16;
  double gen_mu0 = 1.0, gen_kappa = 1.0, gen_delta0 = 0.0;
  std::uint64_t gen_seed = dlbm::kDefaultSeed;
  std::string gen_out = "instance.json";
  gen->add_option("--m", gen_m, "rows of A");
  gen->add_option("--n", gen_n, "columns of A (n >= m)");
  gen->add_option("--mu0", gen_mu0, "initial barrier parameter");
  gen->add_option("--kappa", gen_kappa, "target condition number of A");
  gen->add_option("--delta0", gen_delta0, "initial proximity in [0, 0.5]");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path")->required();

  // solve
  auto* slv = app.add_subcommand("solve", "run the barrier method on an instance");
  SolveFlags solve_flags;
  add_solve_flags(slv, &solve_flags);

  // refine
  auto* ref =
      app.add_subcommand("refine", "iterative refinement to a high-precision gap");
  SolveFlags refine_flags;
  refine_flags.zeta = 1e-8;
  double zeta_hat = 1e-2;
  add_solve_flags(ref, &refine_flags);
  ref->add_option("--zeta-hat", zeta_hat, "per-round precision");

  // verify
  auto* ver = app.add_subcommand("verify", "run property suites");
  std::string ver_suite = "all";
  std::uint64_t ver_seed = dlbm::kDefaultSeed;
  std::string ver_out;
  ver->add_option("suite", ver_suite, "suite name or 'all'");
  ver->add_option("--seed", ver_seed, "suite seed");
  ver->add_option("--out", ver_out, "write the aggregate CSV here");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a named experiment suite");
  std::string exp_name;
  std::string exp_dir = "experiments";
  double exp_zeta = 1e-6;
  std::uint64_t exp_seed = dlbm::kDefaultSeed;
  exp->add_option("name", exp_name, "scaling|conditioning|noise-sweep")->required();
  exp->add_option("--out-dir", exp_dir, "output directory");
  exp->add_option("--zeta", exp_zeta, "target gap for the runs");
  exp->add_option("--seed", exp_seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArgs;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_m, gen_n, gen_mu0, gen_kappa, gen_delta0, gen_seed,
                          gen_out);
    if (slv->parsed()) return cmd_solve(solve_flags);
    if (ref->parsed()) return cmd_refine(refine_flags, zeta_hat);
    if (ver->parsed()) return cmd_verify(ver_suite, ver_seed, ver_out);
    if (exp->parsed()) return cmd_experiment(exp_name, exp_dir, exp_zeta, exp_seed);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const dlbm::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const dlbm::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
