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

#include "dlbm/verify.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dlbm/barrier_solver.hpp"
#include "dlbm/instance_gen.hpp"
#include "dlbm/io.hpp"
#include "dlbm/lo_core.hpp"

namespace dlbm {

namespace {

Matrix haar(Index dim, Rng& rng) {
  Matrix gauss(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) gauss(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().topRows(dim);
  for (Index j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

void record(SuiteResult* result, bool ok, double violation) {
  ++result->trials;
  if (!ok) ++result->failures;
  result->max_violation = std::max(result->max_violation, violation);
}

GeneratedProblem small_problem(Rng& rng, std::uint64_t seed, double delta0,
                               double kappa) {
  GenSpec spec;
  spec.m = 2 + static_cast<Index>(rng.uniform() * 6.0);   // 2..7
  spec.n = spec.m * (3 + static_cast<Index>(rng.uniform() * 4.0));
  spec.kappa_target = spec.m == 1 ? 1.0 : kappa;
  spec.delta0 = delta0;
  spec.seed = seed;
  return gen_centered(spec);
}

}  // namespace

DirectionReport constrained_noise_report(const LoInstance& inst, const Vector& s,
                                         double mu, double max_err, Rng& rng) {
  OracleConfig config;
  config.kind = OracleKind::SimulatedQuantum;
  config.noise_scale = 1.0;
  for (int attempt = 0; attempt < 80; ++attempt) {
    const DirectionReport rep = direction_report(inst, s, mu, config, rng);
    if (rep.err_ds_scaled_norm <= max_err) return rep;
    config.noise_scale *= 0.5;
  }
  config.noise_scale = 0.0;
  return direction_report(inst, s, mu, config, rng);
}

SuiteResult verify_lemma8(std::uint64_t seed) {
  SuiteResult result{"lemma8"};
  Rng rng(seed);
  for (int trial = 0; trial < 500; ++trial) {
    const Index dim = 2 + static_cast<Index>(rng.uniform() * 15.0);
    const Matrix q = haar(dim, rng);
    Vector eigs(dim);
    const double kappa = std::pow(10.0, rng.uniform() * 4.0);
    for (Index i = 0; i < dim; ++i)
      eigs[i] = std::pow(kappa, static_cast<double>(i) / std::max<Index>(1, dim - 1));
    const Matrix m = q * eigs.asDiagonal() * q.transpose();

    const Vector u = rng.unit_sphere(dim);
    const Vector v = rng.unit_sphere(dim);
    const double gamma2 = rng.uniform();
    // Every fifth trial sits on the boundary gamma1 = gamma2 / sqrt(kappa).
    const double frac = (trial % 5 == 0) ? 1.0 : rng.uniform();
    const double gamma1 = frac * gamma2 / std::sqrt(kappa);

    const double value = u.dot(m * (gamma1 * v)) + u.dot(m * u);
    record(&result, value >= -1e-10, std::max(0.0, -value));
  }
  return result;
}

SuiteResult verify_cond(std::uint64_t seed) {
  SuiteResult result{"cond"};
  Rng rng(seed);
  for (int trial = 0; trial < 500; ++trial) {
    const Index m = 2 + static_cast<Index>(rng.uniform() * 10.0);
    const Index n = m + static_cast<Index>(rng.uniform() * (2.0 * m + 20.0));
    Matrix q(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) q(i, j) = rng.normal();
    Vector psi(n);
    for (Index j = 0; j < n; ++j) psi[j] = std::pow(10.0, rng.uniform(-3.0, 3.0));

    Eigen::JacobiSVD<Matrix> svd_q(q);
    const double kq = svd_q.singularValues()(0) / svd_q.singularValues()(m - 1);
    const double kpsi = psi.maxCoeff() / psi.minCoeff();

    const Matrix product = q * psi.asDiagonal() * q.transpose();
    Eigen::JacobiSVD<Matrix> svd_p(product);
    const double kp = svd_p.singularValues()(0) / svd_p.singularValues()(m - 1);

    const double bound = kpsi * kq * kq * (1.0 + 1e-8);
    record(&result, kp <= bound, std::max(0.0, kp / bound - 1.0));
  }
  return result;
}

SuiteResult verify_prop1(std::uint64_t seed) {
  SuiteResult result{"prop1"};
  const Index dims[10][2] = {{2, 6},  {3, 12},  {4, 16}, {4, 32},  {6, 24},
                             {8, 64}, {8, 32},  {12, 48}, {16, 64}, {5, 30}};
  const double kappas[10] = {1, 3, 10, 30, 100, 10, 1, 3, 10, 300};
  Rng rng(seed);
  for (int i = 0; i < 10; ++i) {
    GenSpec spec;
    spec.m = dims[i][0];
    spec.n = dims[i][1];
    spec.kappa_target = kappas[i];
    spec.delta0 = 0.3;
    spec.seed = seed + static_cast<std::uint64_t>(i);
    const GeneratedProblem problem = gen_centered(spec);
    const LoInstance& inst = problem.instance;

    const NesSystem nes = assemble_nes(inst, problem.s0, problem.mu0);
    const Vector dy = solve_exact(nes);
    const Vector unit = dy / dy.norm();
    const Vector u = nes.matrix_factor.transpose() * dy;
    const Vector uhat = u / u.norm();
    const double budget = noise_budget(inst, problem.s0);

    for (int sample = 0; sample < 1000; ++sample) {
      const Vector noisy = unit + budget * rng.unit_sphere(inst.m);
      const Vector v = nes.matrix_factor.transpose() * noisy;
      const double cos_psi = uhat.dot(v / v.norm());
      record(&result, cos_psi >= 0.995, std::max(0.0, 0.995 - cos_psi));
    }
  }
  return result;
}

SuiteResult verify_lambda(std::uint64_t seed) {
  SuiteResult result{"lambda"};
  Rng rng(seed);
  const double grid[6] = {0.5, 0.9, 0.99, 1.01, 1.1, 1.5};
  for (int trial = 0; trial < 100; ++trial) {
    const GeneratedProblem problem =
        small_problem(rng, seed + 1000 + static_cast<std::uint64_t>(trial),
                      rng.uniform(0.05, 0.45), std::pow(10.0, rng.uniform() * 2.0));
    const LoInstance& inst = problem.instance;

    OracleConfig config;
    config.kind = OracleKind::SimulatedQuantum;
    config.noise_scale = rng.uniform(0.0, 2.0);
    const DirectionReport rep =
        direction_report(inst, problem.s0, problem.mu0, config, rng);

    const NesSystem nes = assemble_nes(inst, problem.s0, problem.mu0);
    const Vector u = nes.matrix_factor.transpose() * rep.dy_exact;
    const Vector v = nes.matrix_factor.transpose() * rep.dy_unit;
    const double obj_star = (u - rep.lambda_star * v).norm();

    bool ok = true;
    double violation = 0.0;
    for (double factor : grid) {
      const double obj = (u - factor * rep.lambda_star * v).norm();
      if (obj < obj_star - 1e-13 * std::max(1.0, obj_star)) {
        ok = false;
        violation = std::max(violation, obj_star - obj);
      }
    }
    const double ortho =
        std::abs((u - rep.lambda_star * v).dot(v)) / (u.norm() * v.norm());
    if (ortho > 1e-10) ok = false;
    record(&result, ok, std::max(violation, ortho));
  }
  return result;
}

SuiteResult verify_quadratic(std::uint64_t seed) {
  SuiteResult result{"quadratic"};
  Rng rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    const double delta0 = 0.40 + 0.1 * rng.uniform();
    const GeneratedProblem problem =
        small_problem(rng, seed + 2000 + static_cast<std::uint64_t>(trial), delta0,
                      std::pow(10.0, rng.uniform() * 1.5));
    const LoInstance& inst = problem.instance;
    const double mu = problem.mu0;

    for (int noisy = 0; noisy < 2; ++noisy) {
      Vector y = problem.y0;
      Vector s = problem.s0;
      double delta = proximity(inst, s, mu).delta;
      for (int step = 0; step < 60 && delta >= 1e-6; ++step) {
        DirectionReport rep;
        if (noisy) {
          rep = constrained_noise_report(inst, s, mu, delta * delta / 3.0, rng);
        } else {
          OracleConfig config;  // exact
          rep = direction_report(inst, s, mu, config, rng);
        }
        y += rep.dy_scaled;
        s = dual_slack(inst, y);
        if (s.minCoeff() <= 0.0) {
          record(&result, false, 1.0);
          break;
        }
        const double delta_next = proximity(inst, s, mu).delta;
        const double bound =
            (noisy ? 1.5 : 1.0) * delta * delta + 1e-8;
        record(&result, delta_next <= bound, std::max(0.0, delta_next - bound));
        delta = delta_next;
      }
    }
  }
  return result;
}

SuiteResult verify_identity(std::uint64_t seed) {
  SuiteResult result{"identity"};
  const std::vector<SuiteCase> cases = gen_suite(SuiteName::Conditioning, seed);
  for (size_t i = 0; i < cases.size(); ++i) {
    SolverConfig config;
    config.zeta = 1e-4;
    config.oracle.kind = OracleKind::SimulatedQuantum;
    config.oracle.noise_scale = 1.0;
    config.oracle.seed = seed + static_cast<std::uint64_t>(i);
    const SolveOutcome outcome =
        solve(cases[i].problem.instance, cases[i].problem.y0, cases[i].problem.mu0,
              config);
    const bool ok = outcome.result.status == SolveStatus::Converged &&
                    outcome.max_identity_gap <= 1e-8;
    result.trials += outcome.result.iterations;
    if (!ok) ++result.failures;
    result.max_violation = std::max(result.max_violation, outcome.max_identity_gap);
  }
  return result;
}

SuiteResult verify_proximity(std::uint64_t seed) {
  SuiteResult result{"proximity"};
  Rng rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const GeneratedProblem problem =
        small_problem(rng, seed + 3000 + static_cast<std::uint64_t>(trial),
                      rng.uniform(0.0, 0.5), std::pow(10.0, rng.uniform() * 2.0));
    const LoInstance& inst = problem.instance;

    const double route_a = proximity(inst, problem.s0, problem.mu0).delta;
    const NesSystem nes = assemble_nes(inst, problem.s0, problem.mu0);
    const Vector dy = solve_exact(nes);
    const double route_b =
        (inst.A.transpose() * dy).cwiseQuotient(problem.s0).norm();
    const double gap = std::abs(route_a - route_b);
    record(&result, gap <= 1e-8, gap);
  }
  return result;
}

SuiteResult verify_sandwich(std::uint64_t seed) {
  SuiteResult result{"sandwich"};
  Rng rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const GeneratedProblem problem =
        small_problem(rng, seed + 4000 + static_cast<std::uint64_t>(trial),
                      rng.uniform(0.0, 0.5), std::pow(10.0, rng.uniform() * 2.0));
    const LoInstance& inst = problem.instance;
    const double n = static_cast<double>(inst.n);
    const double mu = problem.mu0;

    const ProximityReport prox = proximity(inst, problem.s0, mu);
    const Vector& x = prox.x_of_s_mu.x;
    const double gap = duality_gap(x, problem.s0);
    const double lo = n * mu * (1.0 - prox.delta);
    const double hi = n * mu * (1.0 + prox.delta);

    bool ok = gap >= lo - 1e-9 && gap <= hi + 1e-9;
    double violation = std::max({0.0, lo - gap, gap - hi});
    if (prox.delta <= 1.0) {
      if (x.minCoeff() < -1e-10) {
        ok = false;
        violation = std::max(violation, -x.minCoeff());
      }
      const double resid = (inst.A * x - inst.b).norm();
      const double resid_cap = 1e-8 * (1.0 + inst.b.norm());
      if (resid > resid_cap) {
        ok = false;
        violation = std::max(violation, resid - resid_cap);
      }
    }
    record(&result, ok, violation);
  }
  return result;
}

SuiteResult verify_slack_kappa(std::uint64_t seed) {
  SuiteResult result{"slack_kappa"};
  Rng rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.uniform() * 30.0);
    Vector s(n);
    for (Index i = 0; i < n; ++i) s[i] = std::pow(10.0, rng.uniform(-3.0, 3.0));

    const double recorded = kappa_slack_sq(s);
    const double ratio = s.maxCoeff() / s.minCoeff();
    const bool exact_ok = recorded == ratio * ratio;

    Eigen::JacobiSVD<Matrix> svd(Matrix(s.array().pow(-2.0).matrix().asDiagonal()));
    const double via_svd =
        svd.singularValues()(0) / svd.singularValues()(n - 1);
    const double rel = std::abs(recorded - via_svd) / via_svd;
    record(&result, exact_ok && rel <= 1e-12, rel + (exact_ok ? 0.0 : 1.0));
  }
  return result;
}

SuiteResult verify_budget(std::uint64_t seed) {
  SuiteResult result{"budget"};
  const std::vector<SuiteCase> cases = gen_suite(SuiteName::Conditioning, seed);
  for (const SuiteCase& c : cases) {
    const LoInstance& inst = c.problem.instance;
    const Matrix factor = inst.A * c.problem.s0.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Matrix> svd(factor);
    const double kappa = svd.singularValues()(0) / svd.singularValues()(inst.m - 1);
    const double budget = noise_budget(inst, c.problem.s0);
    const double rel = std::abs(budget * kappa / kNoiseBudgetFactor - 1.0);
    record(&result, rel <= 0.01, rel);
  }
  return result;
}

SuiteResult verify_roundtrip(std::uint64_t seed) {
  SuiteResult result{"roundtrip"};
  Rng rng(seed);
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "dlbm_verify_roundtrip";
  std::filesystem::create_directories(dir);
  for (int trial = 0; trial < 5; ++trial) {
    const GeneratedProblem problem =
        small_problem(rng, seed + 5000 + static_cast<std::uint64_t>(trial),
                      rng.uniform(0.0, 0.4), 10.0);
    const std::string path = (dir / ("inst" + std::to_string(trial) + ".json")).string();
    write_instance(path, to_doc(problem));
    const InstanceDoc loaded = read_instance(path);

    bool ok = loaded.instance.A == problem.instance.A &&
              loaded.instance.b == problem.instance.b &&
              loaded.instance.c == problem.instance.c && loaded.y0 &&
              *loaded.y0 == problem.y0 && loaded.s0 && *loaded.s0 == problem.s0 &&
              loaded.x0 && *loaded.x0 == problem.x0 && loaded.mu0 &&
              *loaded.mu0 == problem.mu0;
    record(&result, ok, ok ? 0.0 : 1.0);
    std::filesystem::remove(path);
  }
  return result;
}

std::vector<std::string> verify_suite_names() {
  return {"lemma8",   "cond",     "prop1",       "lambda", "quadratic", "identity",
          "proximity", "sandwich", "slack_kappa", "budget", "roundtrip"};
}

std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  auto run_one = [&](const std::string& name) {
    if (name == "lemma8") results.push_back(verify_lemma8(seed));
    else if (name == "cond") results.push_back(verify_cond(seed));
    else if (name == "prop1") results.push_back(verify_prop1(seed));
    else if (name == "lambda") results.push_back(verify_lambda(seed));
    else if (name == "quadratic") results.push_back(verify_quadratic(seed));
    else if (name == "identity") results.push_back(verify_identity(seed));
    else if (name == "proximity") results.push_back(verify_proximity(seed));
    else if (name == "sandwich") results.push_back(verify_sandwich(seed));
    else if (name == "slack_kappa") results.push_back(verify_slack_kappa(seed));
    else if (name == "budget") results.push_back(verify_budget(seed));
    else if (name == "roundtrip") results.push_back(verify_roundtrip(seed));
    else throw DimensionError("unknown verify suite: " + name);
  };
  if (suite == "all") {
    for (const std::string& name : verify_suite_names()) run_one(name);
  } else {
    run_one(suite);
  }
  return results;
}

std::string aggregate_csv(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  out << "suite,trials,failures,max_violation\n";
  for (const SuiteResult& r : results)
    out << r.name << ',' << r.trials << ',' << r.failures << ','
        << format_double(r.max_violation) << "\n";
  return out.str();
}

}  // namespace dlbm
