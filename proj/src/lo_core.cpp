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

#include "dlbm/lo_core.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace dlbm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

void check_slack_domain(const LoInstance& inst, const Vector& s, double mu) {
  require(s.size() == inst.n, "slack length does not match instance");
  if (s.minCoeff() <= 0.0) throw NumericalError("slack vector is not strictly positive");
  if (!(mu > 0.0)) throw NumericalError("barrier parameter must be positive");
}

}  // namespace

LoInstance LoInstance::make(Matrix A, Vector b, Vector c) {
  const Index m = A.rows();
  const Index n = A.cols();
  require(m >= 1 && n >= m, "instance requires 1 <= m <= n");
  require(b.size() == m, "b length does not match row count");
  require(c.size() == n, "c length does not match column count");
  if (!A.allFinite() || !b.allFinite() || !c.allFinite())
    throw NumericalError("instance data contains non-finite entries");

  Eigen::JacobiSVD<Matrix> svd(A);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m - 1);
  const double tol = static_cast<double>(std::max(m, n)) *
                     std::numeric_limits<double>::epsilon() * smax;
  if (!(smin > tol))
    throw NumericalError("A is numerically rank deficient (sigma_min <= rank tolerance)");

  LoInstance inst;
  inst.m = m;
  inst.n = n;
  inst.A = std::move(A);
  inst.b = std::move(b);
  inst.c = std::move(c);
  return inst;
}

Vector dual_slack(const LoInstance& inst, const Vector& y) {
  require(y.size() == inst.m, "y length does not match instance");
  return inst.c - inst.A.transpose() * y;
}

InteriorCheck is_interior_dual(const LoInstance& inst, const Vector& y) {
  const Vector s = dual_slack(inst, y);
  const double margin = s.minCoeff();
  return {margin > 0.0, margin};
}

PrimalEstimate primal_projection(const LoInstance& inst, const Vector& s, double mu) {
  check_slack_domain(inst, s, mu);
  const Index m = inst.m;
  const Index n = inst.n;

  // G = S^-1 A' (n x m); the constraint set is {u : G'u = b} with u = s x.
  const Matrix G = s.cwiseInverse().asDiagonal() * inst.A.transpose();
  Eigen::ColPivHouseholderQR<Matrix> qr(G);
  if (qr.rank() < m)
    throw NumericalError("primal projection failed: QR of S^-1*A' is rank deficient");

  const Matrix R = qr.matrixR().topLeftCorner(m, m);
  const Vector rp = inst.b - mu * (G.transpose() * Vector::Ones(n));

  // u = mu e + Q R^-T P' rp is the closest point of the affine set to mu e.
  Vector t = R.triangularView<Eigen::Upper>().transpose().solve(
      Vector(qr.colsPermutation().transpose() * rp));
  Vector padded = Vector::Zero(n);
  padded.head(m) = t;
  const Vector u = Vector::Constant(n, mu) + qr.householderQ() * padded;

  PrimalEstimate est;
  est.x = u.cwiseQuotient(s);
  est.residual_b = (inst.A * est.x - inst.b).norm();
  return est;
}

ProximityReport proximity(const LoInstance& inst, const Vector& s, double mu) {
  ProximityReport report;
  report.x_of_s_mu = primal_projection(inst, s, mu);
  report.delta =
      (Vector::Constant(inst.n, mu) - s.cwiseProduct(report.x_of_s_mu.x)).norm() / mu;
  return report;
}

double duality_gap(const Vector& x, const Vector& s) {
  require(x.size() == s.size(), "duality gap requires equal-length vectors");
  return s.dot(x);
}

DualIterate make_iterate(const LoInstance& inst, const Vector& y, double mu) {
  if (!(mu > 0.0)) throw NumericalError("barrier parameter must be positive");
  Vector s = dual_slack(inst, y);
  if (s.minCoeff() <= 0.0)
    throw NumericalError("iterate is not strictly interior (min slack <= 0)");
  return {y, std::move(s), mu};
}

}  // namespace dlbm
