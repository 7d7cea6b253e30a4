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

#ifndef SPARSELDR_LP_SOLVER_HPP_
#define SPARSELDR_LP_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "sparseldr/lp_model.hpp"

namespace sparseldr {

enum class SolveStatus { kOptimal, kUnbounded, kInfeasible, kIterationLimit };

const char* ToString(SolveStatus status);

// Leaving-row choice of the dual simplex (entering-column choice of the
// primal). Both switch to Bland's rule after 3 * rows degenerate pivots.
enum class PivotRule { kDantzigWithBlandFallback, kSteepestEdgeWithBlandFallback };

enum class SimplexMethod { kAuto, kPrimal, kDual };

struct SolverOptions {
  double feas_tol = 1e-8;
  double opt_tol = 1e-8;
  std::int64_t max_iters = 20'000'000;
  PivotRule pivot_rule = PivotRule::kSteepestEdgeWithBlandFallback;
  // Pivot free and superbasic columns into the basis after optimality so
  // that the returned point is a basic solution.
  bool require_vertex = true;
  SimplexMethod method = SimplexMethod::kAuto;
  // Small random cost shifts against dual degeneracy; removed before the
  // final optimality check.
  bool perturb_costs = true;
  bool scale = true;
  std::uint64_t seed = 0;
  // Models above this many nonzeros are rejected; export them with
  // write_mps and use an external solver instead.
  std::int64_t max_nonzeros = 4'000'000;
  int log_level = 0;
};

// Duals follow the convention of the internal minimization form: a <= row
// has dual <= 0 at optimality whether the model minimizes or maximizes
// (a maximization is solved as the minimization of the negated objective),
// and = rows have free duals.
struct LPSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> primal;
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  bool is_vertex = false;
  std::vector<double> ray;  // primal improving ray when kUnbounded
  std::int64_t iterations = 0;
  int nonbasic_off_bound = 0;
};

LPSolution solve(const LPModel& model, const SolverOptions& options = {});

}  // namespace sparseldr

#endif  // SPARSELDR_LP_SOLVER_HPP_
