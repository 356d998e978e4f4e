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

// Exercises the installed CLI end to end: exit-code contract, file formats,
// and the determinism of `verify all`. Driven by ctest with DLBM_CLI set.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dlbm/io.hpp"
#include "dlbm/lo_core.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  } else {
    std::cout << "ok: " << what << "\n";
  }
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main() {
  const char* cli_env = std::getenv("DLBM_CLI");
  if (cli_env == nullptr) {
    std::cerr << "DLBM_CLI is not set\n";
    return 1;
  }
  const std::string cli = cli_env;
  const fs::path dir = fs::temp_directory_path() / "dlbm_cli_tests";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string quiet = " > /dev/null 2>&1";

  const fs::path instance = dir / "p.json";
  const fs::path trace = dir / "trace.csv";

  // generate: happy path and the n >= m guard.
  expect(run(cli + " generate --m 8 --n 64 --mu0 1 --seed 7 --out " +
             instance.string() + quiet) == 0,
         "generate exits 0");
  expect(fs::exists(instance), "generate writes the instance file");
  expect(run(cli + " generate --n 3 --m 8 --out " + (dir / "bad.json").string() +
             quiet) == 2,
         "generate with n < m exits 2");

  {
    const dlbm::InstanceDoc doc = dlbm::read_instance(instance.string());
    expect(doc.has_start(), "generated file carries start data");
    expect(doc.instance.m == 8 && doc.instance.n == 64,
           "generated file has the requested shape");
  }

  // generate with an embedded delta certificate.
  const fs::path offcenter = dir / "offcenter.json";
  expect(run(cli + " generate --m 6 --n 30 --delta0 0.4 --seed 9 --out " +
             offcenter.string() + quiet) == 0,
         "generate --delta0 0.4 exits 0");
  {
    const dlbm::InstanceDoc doc = dlbm::read_instance(offcenter.string());
    const double delta =
        dlbm::proximity(doc.instance, *doc.s0, *doc.mu0).delta;
    expect(std::abs(delta - 0.4) <= 1e-6, "delta certificate recomputes on load");
  }

  // solve: exact oracle, trace file contract.
  expect(run(cli + " solve " + instance.string() + " --zeta 1e-6 --trace " +
             trace.string() + quiet) == 0,
         "solve exits 0 on a certified instance");
  {
    std::ifstream in(trace);
    std::string header;
    std::getline(in, header);
    expect(header == dlbm::kTraceHeader, "trace header is bit-exact");
    const auto rows = dlbm::read_trace(trace.string());
    expect(!rows.empty(), "trace has rows");
    bool ratios_ok = true;
    for (size_t i = 1; i < rows.size(); ++i) {
      const double ratio = rows[i].mu / rows[i - 1].mu;
      if (std::abs(ratio - rows[1].mu / rows[0].mu) > 1e-12) ratios_ok = false;
    }
    expect(ratios_ok, "trace mu ratios are constant within a round");
  }

  // solve: quantum oracle within budget.
  expect(run(cli + " solve " + instance.string() +
             " --oracle quantum --noise-scale 1 --zeta 1e-4" + quiet) == 0,
         "quantum solve at noise-scale 1 exits 0");

  // solve: noise far beyond the budget must trip the strict audits.
  expect(run(cli + " solve " + instance.string() +
             " --oracle quantum --noise-scale 1000 --zeta 1e-4" + quiet) == 4,
         "quantum solve at noise-scale 1000 exits 4 (StepRejected)");

  // solve: iteration cap.
  expect(run(cli + " solve " + instance.string() + " --zeta 1e-8 --max-iters 2" +
             quiet) == 5,
         "tiny --max-iters exits 5 (IterationCap)");

  // solve: InvalidStart via an instance whose start is far from the path.
  const fs::path bad_start = dir / "bad_start.json";
  {
    dlbm::InstanceDoc doc = dlbm::read_instance(instance.string());
    doc.mu0 = 1e-6;  // the certified start is the mu0=1 center, not this one
    dlbm::write_instance(bad_start.string(), doc);
  }
  expect(run(cli + " solve " + bad_start.string() + quiet) == 3,
         "off-path start exits 3 (InvalidStart)");

  // refine: round count report and the zeta > zeta_hat guard.
  const fs::path small = dir / "small.json";
  expect(run(cli + " generate --m 4 --n 16 --seed 3 --out " + small.string() +
             quiet) == 0,
         "generate small instance");
  {
    const fs::path out = dir / "refine_out.txt";
    expect(run(cli + " refine " + small.string() +
               " --zeta 1e-8 --zeta-hat 1e-2 > " + out.string() + " 2>&1") == 0,
           "refine exits 0");
    const std::string text = slurp(out);
    expect(text.find("rounds: 4") != std::string::npos, "refine reports rounds: 4");
  }
  expect(run(cli + " refine " + small.string() + " --zeta 1e-1 --zeta-hat 1e-2" +
             quiet) == 2,
         "refine with zeta > zeta-hat exits 2");

  // verify: single suite and byte-identical `all` aggregates.
  expect(run(cli + " verify lemma8 --seed 857521" + quiet) == 0,
         "verify lemma8 exits 0");
  const fs::path agg1 = dir / "agg1.csv";
  const fs::path agg2 = dir / "agg2.csv";
  expect(run(cli + " verify all --seed 857521 --out " + agg1.string() + quiet) == 0,
         "verify all exits 0");
  expect(run(cli + " verify all --seed 857521 --out " + agg2.string() + quiet) == 0,
         "verify all re-run exits 0");
  expect(slurp(agg1) == slurp(agg2) && !slurp(agg1).empty(),
         "verify all aggregate CSV is byte-identical across runs");

  // experiment: conditioning emits its aggregate CSV.
  const fs::path exp_dir = dir / "exp";
  expect(run(cli + " experiment conditioning --out-dir " + exp_dir.string() + quiet) ==
             0,
         "experiment conditioning exits 0");
  expect(fs::exists(exp_dir / "conditioning.csv"), "conditioning aggregate exists");

  // bad arguments: unknown subcommand and unknown suite.
  expect(run(cli + " frobnicate" + quiet) == 2, "unknown subcommand exits 2");
  expect(run(cli + " verify bogus-suite" + quiet) == 2, "unknown suite exits 2");
  expect(run(cli + " solve /nonexistent/p.json" + quiet) == 2,
         "missing instance file exits 2");

  if (failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_tests: " << failures << " checks failed\n";
  return 1;
}
