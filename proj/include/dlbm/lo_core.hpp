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

#include "dlbm/types.hpp"

namespace dlbm {

/// s = c - A'y.
Vector dual_slack(const LoInstance& inst, const Vector& y);

/// True iff min_i (c - A'y)_i > 0; margin is that minimum either way.
InteriorCheck is_interior_dual(const LoInstance& inst, const Vector& y);

/// x(s, mu) = argmin { ||mu e - s x|| : Ax = b }, computed by projecting
/// mu e onto {u : (A S^-1) u = b} through a QR factorization of S^-1 A'.
/// Throws NumericalError if that factor is rank deficient.
PrimalEstimate primal_projection(const LoInstance& inst, const Vector& s, double mu);

/// delta(s, mu) = ||mu e - s x(s,mu)|| / mu, zero exactly at the mu-center.
ProximityReport proximity(const LoInstance& inst, const Vector& s, double mu);

/// s'x.
double duality_gap(const Vector& x, const Vector& s);

/// Builds (y, s = c - A'y, mu); throws NumericalError if the slack is not
/// strictly positive.
DualIterate make_iterate(const LoInstance& inst, const Vector& y, double mu);

}  // namespace dlbm
