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

#include <optional>
#include <string>
#include <vector>

#include "dlbm/barrier_solver.hpp"
#include "dlbm/instance_gen.hpp"
#include "dlbm/types.hpp"

namespace dlbm {

inline constexpr const char* kTraceHeader =
    "k,round,mu,delta,lambda_star,cos_psi,err_ratio,gap,min_slack,kappa_as_inv,omega";

/// On-disk instance document: m, n, A (row-major), b, c, optional start data.
/// JSON with shortest-round-trip doubles, so write -> read is value-identical.
struct InstanceDoc {
  LoInstance instance;
  std::optional<Vector> y0;
  std::optional<Vector> s0;
  std::optional<Vector> x0;
  std::optional<double> mu0;

  bool has_start() const { return y0.has_value() && mu0.has_value(); }
};

InstanceDoc to_doc(const GeneratedProblem& problem);

void write_instance(const std::string& path, const InstanceDoc& doc);
InstanceDoc read_instance(const std::string& path);

std::string format_trace(const std::vector<TraceRow>& rows);
void write_trace(const std::string& path, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace(const std::string& path);

/// "%.15g" (15 significant digits), the CSV number format.
std::string format_double(double value);

}  // namespace dlbm
