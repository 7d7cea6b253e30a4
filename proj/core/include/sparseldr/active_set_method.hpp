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

#ifndef SPARSELDR_ACTIVE_SET_METHOD_HPP_
#define SPARSELDR_ACTIVE_SET_METHOD_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sparseldr/active_set.hpp"
#include "sparseldr/instance.hpp"
#include "sparseldr/lp_model.hpp"
#include "sparseldr/lp_solver.hpp"
#include "sparseldr/tuple_index.hpp"

namespace sparseldr {

// {(t, 1, j)} U {(t, t, j)}: each decision uses its constant term and the
// most recent uncertainty only.
ActiveSet markovian_init(int horizon, int n);

// Rule coefficients are the duals of the eq[t,s,j] rows of a solved
// build_D_A model; c0 is its objective value.
LinearDecisionRule extract_ldr(const LPModel& dual_model,
                               const LPSolution& solution,
                               const ActiveSet& active);

using ResidualMap = std::map<Triple, double>;

// Optimality residual of every inactive triple, from a solved build_D_A
// model. Groups removed from the model as all-zero get zeta at the lower
// end of their feasible interval.
ResidualMap termination_residuals(const ROInstance& instance,
                                  const ActiveSet& active, const TupleIndex& idx,
                                  const LPModel& dual_model,
                                  const LPSolution& solution);

struct CandidatePartition {
  std::vector<Triple> nonzero;  // |r| > eps_term * (1 + max |r|)
  std::vector<Triple> zero;
};

CandidatePartition partition_candidates(const ResidualMap& residuals,
                                        double eps_term);

struct ActiveSetState {
  ActiveSet active;
  // Objective recorded when a triple entered; absent for initial members.
  std::map<Triple, double> added_value;
  std::uint64_t rng_seed = 0;
  int iteration = 0;
  std::mt19937_64 rng;
};

ActiveSetState make_state(ActiveSet initial, std::uint64_t seed);

// Adds one uniformly drawn period s for every (t, j) with candidates.
std::vector<Triple> grow_active_set(ActiveSetState& state,
                                    const std::vector<Triple>& candidates,
                                    double current_obj);

// Drops triples whose recorded value exceeds the current objective by more
// than 1e-9 and whose coefficient is at most zero_tol in magnitude.
std::vector<Triple> prune_active_set(ActiveSetState& state, double current_obj,
                                     const LinearDecisionRule& ldr,
                                     double zero_tol = 1e-9);

struct ActiveSetOptions {
  std::uint64_t seed = 0;
  double eps_term = 1e-7;
  int max_iterations = 500;
  double multiplier_bound_start = 1e6;
  double multiplier_bound_max = 1e12;
  double zero_tol = 1e-9;
  bool remove_zero_groups = true;
  std::optional<double> reference_objective;
  // Stop once (obj - reference) / max(1, |reference|) <= target_gap.
  std::optional<double> target_gap;
  std::optional<ActiveSet> initial;
  SolverOptions lp;
  std::string backend = "bundled";
};

struct IterationRecord {
  int iteration = 0;
  std::int64_t active_size = 0;
  std::int64_t K_A = 0;
  double objective = 0.0;
  double max_residual = 0.0;
  std::int64_t added = 0;
  std::int64_t removed = 0;
  double millis = 0.0;
  std::optional<double> multiplier_bound;
  ModelSize model;
};

enum class ActiveSetStatus { kOptimal, kTargetGap, kIterationCap, kInfeasible };

const char* ToString(ActiveSetStatus status);

struct IterationStats {
  std::vector<IterationRecord> iterations;
  ActiveSetStatus status = ActiveSetStatus::kIterationCap;
  double objective = kInfinity;
  std::optional<double> gap;
  ActiveSet final_active;
};

struct ActiveSetResult {
  LinearDecisionRule ldr;
  IterationStats stats;
};

ActiveSetResult solve_active_set(const ROInstance& instance,
                                 const ActiveSetOptions& options = {});

double relative_gap(double objective, double reference);

std::string stats_csv(const IterationStats& stats);

}  // namespace sparseldr

#endif  // SPARSELDR_ACTIVE_SET_METHOD_HPP_
