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

#include "dlbm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dlbm {

namespace {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr, Index expected, const char* field) {
  if (!arr.is_array() || static_cast<Index>(arr.size()) != expected)
    throw DimensionError(std::string("instance file: field '") + field +
                         "' has the wrong length");
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) v[i] = arr[static_cast<size_t>(i)].get<double>();
  return v;
}

}  // namespace

InstanceDoc to_doc(const GeneratedProblem& problem) {
  InstanceDoc doc;
  doc.instance = problem.instance;
  doc.y0 = problem.y0;
  doc.s0 = problem.s0;
  doc.x0 = problem.x0;
  doc.mu0 = problem.mu0;
  return doc;
}

void write_instance(const std::string& path, const InstanceDoc& doc) {
  const LoInstance& inst = doc.instance;
  json j;
  j["m"] = inst.m;
  j["n"] = inst.n;
  json a = json::array();
  for (Index i = 0; i < inst.m; ++i)
    for (Index k = 0; k < inst.n; ++k) a.push_back(inst.A(i, k));
  j["A"] = std::move(a);
  j["b"] = vector_to_json(inst.b);
  j["c"] = vector_to_json(inst.c);
  if (doc.y0) j["y0"] = vector_to_json(*doc.y0);
  if (doc.s0) j["s0"] = vector_to_json(*doc.s0);
  if (doc.x0) j["x0"] = vector_to_json(*doc.x0);
  if (doc.mu0) j["mu0"] = *doc.mu0;

  std::ofstream out(path);
  if (!out) throw NumericalError("cannot open instance file for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw NumericalError("failed writing instance file: " + path);
}

InstanceDoc read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NumericalError("cannot open instance file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw NumericalError("instance file " + path + " is not valid JSON: " + e.what());
  }

  if (!j.contains("m") || !j.contains("n") || !j.contains("A") || !j.contains("b") ||
      !j.contains("c"))
    throw DimensionError("instance file must contain m, n, A, b, c");
  const Index m = j["m"].get<Index>();
  const Index n = j["n"].get<Index>();
  if (m < 1 || n < m) throw DimensionError("instance file requires 1 <= m <= n");

  const json& a = j["A"];
  if (!a.is_array() || static_cast<Index>(a.size()) != m * n)
    throw DimensionError("instance file: A must hold m*n numbers (row-major)");
  Matrix A(m, n);
  size_t pos = 0;
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k < n; ++k) A(i, k) = a[pos++].get<double>();

  InstanceDoc doc;
  doc.instance =
      LoInstance::make(std::move(A), vector_from_json(j["b"], m, "b"),
                       vector_from_json(j["c"], n, "c"));
  if (j.contains("y0")) doc.y0 = vector_from_json(j["y0"], m, "y0");
  if (j.contains("s0")) doc.s0 = vector_from_json(j["s0"], n, "s0");
  if (j.contains("x0")) doc.x0 = vector_from_json(j["x0"], n, "x0");
  if (j.contains("mu0")) doc.mu0 = j["mu0"].get<double>();
  return doc;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

std::string format_trace(const std::vector<TraceRow>& rows) {
  std::ostringstream out;
  out << kTraceHeader << "\n";
  for (const TraceRow& r : rows) {
    out << r.k << ',' << r.round << ',' << format_double(r.mu) << ','
        << format_double(r.delta) << ',' << format_double(r.lambda_star) << ','
        << format_double(r.cos_psi) << ',' << format_double(r.err_ratio) << ','
        << format_double(r.gap) << ',' << format_double(r.min_slack) << ','
        << format_double(r.kappa_as_inv) << ',' << format_double(r.omega) << "\n";
  }
  return out.str();
}

void write_trace(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw NumericalError("cannot open trace file for writing: " + path);
  out << format_trace(rows);
  if (!out) throw NumericalError("failed writing trace file: " + path);
}

std::vector<TraceRow> read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NumericalError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw NumericalError("trace file has an unexpected header: " + path);

  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    TraceRow row;
    char comma;
    ss >> row.k >> comma >> row.round >> comma >> row.mu >> comma >> row.delta >>
        comma >> row.lambda_star >> comma >> row.cos_psi >> comma >> row.err_ratio >>
        comma >> row.gap >> comma >> row.min_slack >> comma >> row.kappa_as_inv >>
        comma >> row.omega;
    if (ss.fail()) throw NumericalError("trace file has a malformed row: " + path);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dlbm
