// Copyright 2026 The packcover Authors
//
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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "packcover/solver.hpp"

namespace packcover::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCertificateFailed = 1,
  kExitUsage = 2,  // bad flags or unusable input/output
  kExitEmptyColumn = 3,
};

struct RunConfig {
  std::string subcommand;
  std::string input;     // solve/verify: MatrixMarket instance
  std::string solution;  // verify: JSON written by solve
  std::optional<std::string> capacities;  // optional b sidecar
  std::optional<std::string> objective;   // optional a sidecar
  std::optional<double> eps;  // unset means 0.1, or the solution's own eps
  Variant variant = Variant::kFast;
  std::uint64_t seed = 0;
  std::string out;  // empty: standard output
  double density = 0.25;
  std::size_t rows = 100;
  std::size_t cols = 100;
  std::size_t repeats = 1;
  std::size_t threads = 1;
  bool oracle = false;
};

// Each returns an ExitCode. Machine-readable results go to `out` (or the
// --out file), diagnostics to `err`.
int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Column header of the bench CSV, in output order.
const std::vector<std::string>& bench_columns();

// Predicted operation count [12(r+c) + 480/d] ln(rc) / eps^2.
double predicted_ops(std::size_t rows, std::size_t cols, double density,
                     double eps);
// Dense Simplex work estimate 5 min(r,c) r c.
double simplex_ops(std::size_t rows, std::size_t cols);

// Parses argv (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace packcover::cli
