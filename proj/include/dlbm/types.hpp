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

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dlbm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default seed for every randomized suite (documented CLI default).
inline constexpr std::uint64_t kDefaultSeed = 857521;

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Standard-form problem data: min c'x s.t. Ax = b, x >= 0, with the dual
/// max b'y s.t. A'y + s = c, s >= 0. A must have full row rank.
struct LoInstance {
  Index m = 0;
  Index n = 0;
  Matrix A;  // m x n
  Vector b;  // m
  Vector c;  // n

  /// Validates dimensions, finiteness and numerical row rank
  /// (smallest singular value > max(m,n) * eps * largest).
  static LoInstance make(Matrix A, Vector b, Vector c);
};

/// Dual iterate (y, s, mu). s is always reconstructed as c - A'y, never
/// incrementally updated, so dual feasibility holds by construction.
struct DualIterate {
  Vector y;
  Vector s;
  double mu = 0.0;
};

struct InteriorCheck {
  bool interior = false;
  double margin = 0.0;  // min_i s_i
};

struct PrimalEstimate {
  Vector x;
  double residual_b = 0.0;  // ||Ax - b||
};

struct ProximityReport {
  double delta = 0.0;  // ||mu e - s x(s,mu)|| / mu
  PrimalEstimate x_of_s_mu;
};

}  // namespace dlbm
