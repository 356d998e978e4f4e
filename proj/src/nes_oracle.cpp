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

#include "dlbm/nes_oracle.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace dlbm {

namespace {

// r_p below this is treated as exactly zero (central-path short circuit).
constexpr double kZeroRhsTol = 1e-13;

double kappa_of_factor(const Matrix& factor) {
  Eigen::JacobiSVD<Matrix> svd(factor);
  const Index m = factor.rows();
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m - 1);
  if (!(smin > 0.0))
    throw NumericalError("noise budget unavailable: A S^-1 is numerically singular");
  return smax / smin;
}

Vector cg_direction(const NesSystem& nes, double tolerance) {
  const Matrix& B = nes.matrix_factor;
  const Vector& v = nes.rhs_scaled;
  const Index m = B.rows();
  const double vnorm = v.norm();

  Vector z = Vector::Zero(m);
  Vector r = v;
  Vector p = r;
  double rs = r.squaredNorm();
  const Index max_iters = 10 * m;
  for (Index it = 0; it < max_iters; ++it) {
    // True residual as the stopping rule; matvecs through the factor keep
    // the squared conditioning out of the recurrence.
    if ((B * (B.transpose() * z) - v).norm() <= tolerance * vnorm) break;
    const Vector Bp = B * (B.transpose() * p);
    const double denom = p.dot(Bp);
    if (denom <= 0.0) break;
    const double alpha = rs / denom;
    z += alpha * p;
    r -= alpha * Bp;
    const double rs_next = r.squaredNorm();
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  return z;
}

Vector quantum_direction(const Vector& unit_exact, double budget, double noise_scale,
                         Rng& rng) {
  const Index m = unit_exact.size();
  // Half the radius before renormalization; the renormalized direction then
  // stays within noise_scale * budget of the exact unit direction.
  const double radius = 0.5 * noise_scale * budget;
  const Vector perturbed = unit_exact + radius * rng.unit_sphere(m);
  const double norm = perturbed.norm();
  if (norm == 0.0) throw NumericalError("perturbed direction vanished");
  return perturbed / norm;
}

Vector oracle_direction_with_budget(const NesSystem& nes, const OracleConfig& config,
                                    Rng& rng, double budget) {
  switch (config.kind) {
    case OracleKind::Exact: {
      const Vector dy = solve_exact(nes);
      const double norm = dy.norm();
      if (norm == 0.0) throw NumericalError("oracle_direction requires r_p != 0");
      return dy / norm;
    }
    case OracleKind::TruncatedCg: {
      const Vector z = cg_direction(nes, config.cg_tolerance);
      const double norm = z.norm();
      if (norm == 0.0) throw NumericalError("CG produced a zero direction");
      return z / norm;
    }
    case OracleKind::SimulatedQuantum: {
      const Vector dy = solve_exact(nes);
      const double norm = dy.norm();
      if (norm == 0.0) throw NumericalError("oracle_direction requires r_p != 0");
      return quantum_direction(dy / norm, budget, config.noise_scale, rng);
    }
  }
  throw NumericalError("unknown oracle kind");
}

}  // namespace

NesSystem assemble_nes(const LoInstance& inst, const Vector& s, double mu) {
  if (s.size() != inst.n) throw DimensionError("slack length does not match instance");
  if (s.minCoeff() <= 0.0) throw NumericalError("assemble_nes: nonpositive slack entry");
  if (!(mu > 0.0)) throw NumericalError("assemble_nes: mu must be positive");

  NesSystem nes;
  nes.matrix_factor = inst.A * s.cwiseInverse().asDiagonal();
  nes.rhs_raw = inst.b - mu * (nes.matrix_factor * Vector::Ones(inst.n));
  nes.mu = mu;
  nes.rhs_scaled = nes.rhs_raw / mu;
  return nes;
}

Vector solve_exact(const NesSystem& nes) {
  const Index m = nes.matrix_factor.rows();
  const Matrix G = nes.matrix_factor.transpose();  // S^-1 A', n x m
  Eigen::ColPivHouseholderQR<Matrix> qr(G);
  if (qr.rank() < m)
    throw NumericalError("NES solve failed: QR of S^-1*A' is numerically singular");
  const Matrix R = qr.matrixR().topLeftCorner(m, m);

  Vector t = R.triangularView<Eigen::Upper>().transpose().solve(
      Vector(qr.colsPermutation().transpose() * nes.rhs_raw));
  Vector z = R.triangularView<Eigen::Upper>().solve(t);
  return (qr.colsPermutation() * z) / nes.mu;
}

Vector oracle_direction(const NesSystem& nes, const OracleConfig& config, Rng& rng) {
  const double budget = config.kind == OracleKind::SimulatedQuantum
                            ? kNoiseBudgetFactor / kappa_of_factor(nes.matrix_factor)
                            : 0.0;
  return oracle_direction_with_budget(nes, config, rng, budget);
}

Vector oracle_direction(const NesSystem& nes, const OracleConfig& config) {
  Rng rng(config.seed);
  return oracle_direction(nes, config, rng);
}

double rescale_lambda_star(const NesSystem& nes, const Vector& dy_unit) {
  const Vector dy = solve_exact(nes);
  const Vector u = nes.matrix_factor.transpose() * dy;
  const Vector v = nes.matrix_factor.transpose() * dy_unit;
  const double vv = v.squaredNorm();
  if (vv == 0.0)
    throw NumericalError(
        "rescaling failed: direction lies in the null space of A' (internal error)");
  return u.dot(v) / vv;
}

DirectionReport direction_report(const LoInstance& inst, const Vector& s, double mu,
                                 const OracleConfig& config, Rng& rng) {
  const NesSystem nes = assemble_nes(inst, s, mu);
  const Index m = inst.m;

  DirectionReport rep;
  rep.kappa_as_inv = kappa_of_factor(nes.matrix_factor);
  rep.noise_budget = kNoiseBudgetFactor / rep.kappa_as_inv;

  if (nes.rhs_raw.norm() <= kZeroRhsTol * (1.0 + inst.b.norm())) {
    rep.zero_rhs = true;
    rep.dy_unit = Vector::Zero(m);
    rep.dy_scaled = Vector::Zero(m);
    rep.ds_scaled = Vector::Zero(inst.n);
    rep.dy_exact = Vector::Zero(m);
    return rep;
  }

  rep.dy_exact = solve_exact(nes);
  rep.dy_unit = oracle_direction_with_budget(nes, config, rng, rep.noise_budget);

  const Vector u = nes.matrix_factor.transpose() * rep.dy_exact;
  const Vector v = nes.matrix_factor.transpose() * rep.dy_unit;
  const double vv = v.squaredNorm();
  if (vv == 0.0)
    throw NumericalError(
        "rescaling failed: direction lies in the null space of A' (internal error)");
  rep.lambda_star = u.dot(v) / vv;
  rep.dy_scaled = rep.lambda_star * rep.dy_unit;
  rep.ds_scaled = -(inst.A.transpose() * rep.dy_scaled);

  const Vector ds_exact = -(inst.A.transpose() * rep.dy_exact);
  rep.err_ds_scaled_norm = (rep.ds_scaled - ds_exact).cwiseQuotient(s).norm();

  rep.delta_nes = u.norm();
  const Vector uhat = u / u.norm();
  const Vector vhat = v / std::sqrt(vv);
  rep.cos_psi = std::clamp(uhat.dot(vhat), -1.0, 1.0);
  rep.sin_psi = (vhat - rep.cos_psi * uhat).norm();
  return rep;
}

DirectionReport direction_report(const LoInstance& inst, const Vector& s, double mu,
                                 const OracleConfig& config) {
  Rng rng(config.seed);
  return direction_report(inst, s, mu, config, rng);
}

double noise_budget(const LoInstance& inst, const Vector& s) {
  if (s.size() != inst.n) throw DimensionError("slack length does not match instance");
  if (s.minCoeff() <= 0.0) throw NumericalError("noise_budget: nonpositive slack entry");
  const Matrix factor = inst.A * s.cwiseInverse().asDiagonal();
  return kNoiseBudgetFactor / kappa_of_factor(factor);
}

double kappa_slack_sq(const Vector& s) {
  if (s.size() == 0 || s.minCoeff() <= 0.0)
    throw NumericalError("kappa_slack_sq requires a strictly positive vector");
  const double ratio = s.maxCoeff() / s.minCoeff();
  return ratio * ratio;
}

}  // namespace dlbm
