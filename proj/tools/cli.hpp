// Copyright 2026 The sparseldr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPARSELDR_TOOLS_CLI_HPP_
#define SPARSELDR_TOOLS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparseldr::cli {

enum ExitCode : int { kSuccess = 0, kSolverFailure = 1, kConfigError = 2 };

struct CommandConfig {
  std::string command;    // gen, solve, sparsity, bench, export-mps
  std::string generator;  // prodinv, prodinv-leadtime, newsvendor
  int T = 0;
  int E = 0;
  std::optional<int> delta;
  std::optional<int> k;
  bool benchmark = false;
  std::string overrides;  // JSON merge patch, or @path
  std::string method = "rc";
  std::string rc_form = "dual";  // robust counterpart solved as primal or dual
  std::uint64_t seed = 0;
  double eps_term = 1e-7;
  double feas_tol = 1e-7;
  double zero_tol = 1e-9;
  int max_iterations = 500;
  std::optional<double> target_gap;
  std::string model = "rc-primal";  // export-mps model kind
  std::vector<int> T_list;
  int jobs = 1;
  std::string backend = "bundled";
  std::string input;
  std::string output;  // empty writes to stdout
  std::string stats;
};

// One row of the sparsity experiment.
struct SparsityResult {
  int T = 0;
  int E = 0;
  std::int64_t params_total = 0;
  std::int64_t nnz = 0;
  std::int64_t bound = 0;
  std::int64_t static_params = 0;
  bool is_vertex = false;
};

// Header T,E,params_total,nnz,pct_nonzero,bound_thm,static_params. Throws
// when a result does not come from a vertex solution.
std::string emit_sparsity_csv(const std::vector<SparsityResult>& results);

// Runs a parsed command; returns an ExitCode. Diagnostics go to stderr.
int run_command(const CommandConfig& config);

// Parses argv into a config and runs it.
int main_with_args(int argc, char** argv);

}  // namespace sparseldr::cli

#endif  // SPARSELDR_TOOLS_CLI_HPP_
