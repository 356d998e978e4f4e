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

#include "dlbm/instance_gen.hpp"

#include <Eigen/QR>
#include <cmath>
#include <sstream>

#include "dlbm/lo_core.hpp"
#include "dlbm/rng.hpp"

namespace dlbm {

namespace {

constexpr double kDeltaCertTol = 5e-7;  // half the documented 1e-6 certificate

void validate_spec(const GenSpec& spec) {
  if (!(spec.m >= 1 && spec.n >= spec.m))
    throw DimensionError("generator spec requires n >= m >= 1");
  if (!(spec.mu0 > 0.0)) throw NumericalError("generator spec: mu0 must be positive");
  if (!(spec.kappa_target >= 1.0))
    throw NumericalError("generator spec: kappa_target must be >= 1");
  if (spec.m == 1 && spec.kappa_target != 1.0)
    throw NumericalError("generator spec: a single-row A always has kappa 1");
  if (!(spec.delta0 >= 0.0 && spec.delta0 <= 0.5))
    throw NumericalError("generator spec: delta0 must lie in [0, 0.5]");
}

// Thin orthonormal factor from the QR of a Gaussian matrix, columns
// sign-fixed on the R diagonal.
Matrix haar_columns(Index rows, Index cols, Rng& rng) {
  Matrix gauss(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) gauss(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols);
  for (Index j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Vector geometric_singular_values(Index m, double kappa) {
  Vector sigma(m);
  if (m == 1) {
    sigma[0] = 1.0;
    return sigma;
  }
  for (Index i = 0; i < m; ++i)
    sigma[i] = std::pow(kappa, 1.0 - static_cast<double>(i) / static_cast<double>(m - 1));
  return sigma;
}

}  // namespace

GeneratedProblem gen_centered(const GenSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);

  const Matrix u = haar_columns(spec.m, spec.m, rng);
  const Matrix v = haar_columns(spec.n, spec.m, rng);
  const Vector sigma = geometric_singular_values(spec.m, spec.kappa_target);
  Matrix a = u * sigma.asDiagonal() * v.transpose();

  const Vector x0 = Vector::Ones(spec.n);
  const Vector y0 = rng.gaussian(spec.m);
  Vector b = a * x0;
  Vector s0 = spec.mu0 * Vector::Ones(spec.n);

  if (spec.delta0 > 0.0) {
    // Multiplicative slack perturbation s0 = mu0 (e + alpha g), bisected on
    // alpha until the measured proximity matches delta0. The pattern lives in
    // the row space of A so the primal projection cannot absorb it, and only
    // its negative entries are capped (min s0 >= mu0/2). c does not enter the
    // proximity, so a placeholder instance is enough for the search.
    const LoInstance probe =
        LoInstance::make(a, b, a.transpose() * y0 + Vector::Constant(spec.n, spec.mu0));

    Vector pattern;
    double alpha_hi = 0.0;
    double delta_hi = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Vector candidate = a.transpose() * rng.gaussian(spec.m);
      candidate /= candidate.norm();
      const double worst_negative = -candidate.minCoeff();
      if (worst_negative <= 1e-12) continue;
      const double hi = 0.5 / worst_negative;
      const Vector s = spec.mu0 * (Vector::Ones(spec.n) + hi * candidate);
      const double reach = proximity(probe, s, spec.mu0).delta;
      if (reach > delta_hi) {
        pattern = candidate;
        alpha_hi = hi;
        delta_hi = reach;
      }
      if (delta_hi >= spec.delta0) break;
    }
    if (delta_hi < spec.delta0) {
      std::ostringstream msg;
      msg << "delta0 bisection failed: bracket [0, " << alpha_hi
          << "] reaches only delta = " << delta_hi << " < " << spec.delta0;
      throw NumericalError(msg.str());
    }

    auto measure = [&](double alpha) {
      const Vector s = spec.mu0 * (Vector::Ones(spec.n) + alpha * pattern);
      return proximity(probe, s, spec.mu0).delta;
    };

    double lo = 0.0;
    double hi = alpha_hi;
    double alpha = hi;
    double measured = delta_hi;
    for (int it = 0; it < 200 && std::abs(measured - spec.delta0) > kDeltaCertTol; ++it) {
      alpha = 0.5 * (lo + hi);
      measured = measure(alpha);
      (measured < spec.delta0 ? lo : hi) = alpha;
    }
    if (std::abs(measured - spec.delta0) > kDeltaCertTol) {
      std::ostringstream msg;
      msg << "delta0 bisection did not converge: last bracket [" << lo << ", " << hi
          << "], measured delta = " << measured;
      throw NumericalError(msg.str());
    }
    s0 = spec.mu0 * (Vector::Ones(spec.n) + alpha * pattern);
  }

  Vector c = a.transpose() * y0 + s0;

  GeneratedProblem problem;
  problem.instance = LoInstance::make(std::move(a), std::move(b), std::move(c));
  problem.y0 = y0;
  problem.s0 = std::move(s0);
  problem.x0 = x0;
  problem.mu0 = spec.mu0;
  return problem;
}

SuiteName parse_suite_name(const std::string& name) {
  if (name == "scaling") return SuiteName::Scaling;
  if (name == "conditioning") return SuiteName::Conditioning;
  if (name == "noise-sweep") return SuiteName::NoiseSweep;
  throw DimensionError("unknown suite name: " + name);
}

std::vector<SuiteCase> gen_suite(SuiteName name, std::uint64_t seed) {
  std::vector<SuiteCase> cases;
  switch (name) {
    case SuiteName::Scaling: {
      const Index dims[4][2] = {{4, 16}, {8, 64}, {16, 256}, {32, 1024}};
      for (int i = 0; i < 4; ++i) {
        GenSpec spec;
        spec.m = dims[i][0];
        spec.n = dims[i][1];
        spec.seed = seed + static_cast<std::uint64_t>(i);
        std::ostringstream label;
        label << "scaling_m" << spec.m << "_n" << spec.n;
        cases.push_back({gen_centered(spec), label.str(), -1.0});
      }
      break;
    }
    case SuiteName::Conditioning: {
      const double kappas[4] = {1.0, 10.0, 100.0, 1000.0};
      for (int i = 0; i < 4; ++i) {
        GenSpec spec;
        spec.m = 8;
        spec.n = 64;
        spec.kappa_target = kappas[i];
        spec.seed = seed + static_cast<std::uint64_t>(i);
        std::ostringstream label;
        label << "conditioning_kappa" << kappas[i];
        cases.push_back({gen_centered(spec), label.str(), -1.0});
      }
      break;
    }
    case SuiteName::NoiseSweep: {
      GenSpec spec;
      spec.m = 8;
      spec.n = 64;
      spec.kappa_target = 10.0;
      spec.delta0 = 0.25;
      spec.seed = seed;
      const GeneratedProblem problem = gen_centered(spec);
      const double grid[6] = {0.0, 0.25, 0.5, 1.0, 2.0, 10.0};
      for (double scale : grid) {
        std::ostringstream label;
        label << "noise_sweep_scale" << scale;
        cases.push_back({problem, label.str(), scale});
      }
      break;
    }
  }
  return cases;
}

}  // namespace dlbm
