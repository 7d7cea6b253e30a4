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

#include "sparseldr/active_set_method.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "sparseldr/backend.hpp"
#include "sparseldr/error.hpp"
#include "sparseldr/formulations.hpp"

namespace sparseldr {

const char* ToString(ActiveSetStatus status) {
  switch (status) {
    case ActiveSetStatus::kOptimal: return "optimal";
    case ActiveSetStatus::kTargetGap: return "target-gap";
    case ActiveSetStatus::kIterationCap: return "iteration-cap";
    case ActiveSetStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

ActiveSet markovian_init(int horizon, int n) {
  if (horizon < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "horizon and n must be >= 1");
  }
  ActiveSet set(horizon, n);
  for (int t = 1; t <= horizon; ++t) {
    for (int j = 1; j <= n; ++j) {
      set.insert({t, 1, j});
      set.insert({t, t, j});
    }
  }
  return set;
}

LinearDecisionRule extract_ldr(const LPModel& dual_model,
                               const LPSolution& solution,
                               const ActiveSet& active) {
  if (solution.status != SolveStatus::kOptimal) {
    throw Error(ErrorCode::kNotOptimal,
                std::string("cannot extract a rule from a ") +
                    ToString(solution.status) + " solve");
  }
  LinearDecisionRule ldr;
  for (const Triple& key : active) {
    auto row = dual_model.find_row(eq_name(key));
    if (!row) throw Error(ErrorCode::kMissingName, "missing row " + eq_name(key));
    ldr.set(key, solution.row_duals[*row]);
  }
  ldr.c0 = solution.objective;
  return ldr;
}

ResidualMap termination_residuals(const ROInstance& instance,
                                  const ActiveSet& active, const TupleIndex& idx,
                                  const LPModel& dual_model,
                                  const LPSolution& solution) {
  const int H = instance.horizon();
  const int n = instance.n();
  const int m = instance.m();
  const BoxUncertainty& box = instance.box();
  std::vector<double> lambda(m + 1);
  for (int i = 0; i <= m; ++i) {
    auto col = dual_model.find_column(lam_name(i));
    if (!col) throw Error(ErrorCode::kMissingName, "missing column " + lam_name(i));
    lambda[i] = solution.primal[*col];
  }
  ResidualMap residuals;
  std::vector<double> group_lambda;
  std::vector<double> ratio;
  // Accumulator over (t, j) with t >= s, reused across periods.
  std::vector<double> acc(static_cast<std::size_t>(H) * n);
  for (int s = 1; s <= H; ++s) {
    const int K = idx.count(s);
    const std::vector<int>& pi = idx.pi[s - 1];
    group_lambda.assign(K, 0.0);
    for (int i = 0; i <= m; ++i) group_lambda[pi[i]] += lambda[i];
    ratio.assign(K, 0.0);
    for (int k = 0; k < K; ++k) {
      if (group_lambda[k] == 0.0) continue;
      auto col = dual_model.find_column(zeta_name(s, k));
      const double zeta = col ? solution.primal[*col] : box.lower(s) * group_lambda[k];
      ratio[k] = zeta / group_lambda[k];
    }
    std::fill(acc.begin() + static_cast<std::ptrdiff_t>(s - 1) * n, acc.end(), 0.0);
    for (int i = 0; i <= m; ++i) {
      const double w = ratio[pi[i]] * lambda[i];
      if (w == 0.0) continue;
      const auto& a = instance.row(i).a;
      auto first = std::lower_bound(
          a.begin(), a.end(), s,
          [](const DecisionCoef& e, int key) { return e.t < key; });
      for (auto it = first; it != a.end(); ++it) {
        acc[static_cast<std::size_t>(it->t - 1) * n + (it->j - 1)] += w * it->value;
      }
    }
    for (int t = s; t <= H; ++t) {
      for (int j = 1; j <= n; ++j) {
        const Triple key{t, s, j};
        if (active.contains(key)) continue;
        residuals.emplace(key, acc[static_cast<std::size_t>(t - 1) * n + (j - 1)]);
      }
    }
  }
  return residuals;
}

CandidatePartition partition_candidates(const ResidualMap& residuals,
                                        double eps_term) {
  if (!(eps_term > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_term must be > 0");
  }
  double scale = 0.0;
  for (const auto& [key, r] : residuals) scale = std::max(scale, std::abs(r));
  const double threshold = eps_term * (1.0 + scale);
  CandidatePartition out;
  for (const auto& [key, r] : residuals) {
    (std::abs(r) > threshold ? out.nonzero : out.zero).push_back(key);
  }
  return out;
}

ActiveSetState make_state(ActiveSet initial, std::uint64_t seed) {
  ActiveSetState state;
  state.active = std::move(initial);
  state.rng_seed = seed;
  state.rng.seed(seed);
  return state;
}

std::vector<Triple> grow_active_set(ActiveSetState& state,
                                    const std::vector<Triple>& candidates,
                                    double current_obj) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "no growth candidates");
  }
  std::map<std::pair<int, int>, std::vector<int>> periods;
  for (const Triple& key : candidates) periods[{key.t, key.j}].push_back(key.s);
  std::vector<Triple> added;
  for (auto& [tj, list] : periods) {
    std::sort(list.begin(), list.end());
    std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
    const Triple key{tj.first, list[pick(state.rng)], tj.second};
    if (state.active.insert(key)) {
      state.added_value[key] = current_obj;
      added.push_back(key);
    }
  }
  return added;
}

std::vector<Triple> prune_active_set(ActiveSetState& state, double current_obj,
                                     const LinearDecisionRule& ldr,
                                     double zero_tol) {
  std::vector<Triple> removed;
  for (auto it = state.added_value.begin(); it != state.added_value.end();) {
    const Triple key = it->first;
    if (current_obj < it->second - 1e-9 && ldr.contains(key) &&
        std::abs(ldr.get(key)) <= zero_tol) {
      state.active.erase(key);
      removed.push_back(key);
      it = state.added_value.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

double relative_gap(double objective, double reference) {
  return (objective - reference) / std::max(1.0, std::abs(reference));
}

ActiveSetResult solve_active_set(const ROInstance& instance,
                                 const ActiveSetOptions& options) {
  const BackendRegistry& backends = BackendRegistry::global();
  ActiveSetState state = make_state(
      options.initial ? *options.initial
                      : markovian_init(instance.horizon(), instance.n()),
      options.seed);
  ActiveSetResult result;
  IterationStats& stats = result.stats;
  std::optional<LinearDecisionRule> best;
  LinearDecisionRule last;
  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    state.iteration = iteration;
    const auto start = std::chrono::steady_clock::now();
    const TupleIndex idx = dedup_tuples(instance, state.active);
    DualBuildOptions build;
    build.remove_zero_groups = options.remove_zero_groups;
    LPModel model = build_D_A(instance, state.active, idx, build);
    LPSolution sol = backends.solve(options.backend, model, options.lp);
    std::optional<double> bound;
    if (sol.status == SolveStatus::kUnbounded) {
      double M = options.multiplier_bound_start;
      while (true) {
        build.multiplier_bound = M;
        model = build_D_A(instance, state.active, idx, build);
        sol = backends.solve(options.backend, model, options.lp);
        if (sol.status == SolveStatus::kOptimal) break;
        M *= 10.0;
        if (M > options.multiplier_bound_max) {
          throw Error(ErrorCode::kSolverFailure,
                      "bounded dual restriction did not solve up to the "
                      "largest multiplier bound");
        }
      }
      bound = M;
    }
    if (sol.status != SolveStatus::kOptimal) {
      throw Error(ErrorCode::kSolverFailure,
                  std::string("dual restriction solve ended ") + ToString(sol.status));
    }
    const double obj = sol.objective;
    LinearDecisionRule ldr = extract_ldr(model, sol, state.active);
    const ResidualMap residuals =
        termination_residuals(instance, state.active, idx, model, sol);
    const CandidatePartition parts = partition_candidates(residuals, options.eps_term);
    double max_residual = 0.0;
    for (const auto& [key, r] : residuals) max_residual = std::max(max_residual, std::abs(r));

    IterationRecord record;
    record.iteration = iteration;
    record.active_size = static_cast<std::int64_t>(state.active.size());
    record.K_A = idx.total();
    record.objective = obj;
    record.max_residual = max_residual;
    record.multiplier_bound = bound;
    record.model = model_size(model);

    if (!bound && (!best || obj < *best->c0)) best = ldr;
    last = ldr;

    bool stop = false;
    if (parts.nonzero.empty()) {
      stats.status = bound ? ActiveSetStatus::kInfeasible : ActiveSetStatus::kOptimal;
      stop = true;
    } else if (!bound && options.reference_objective && options.target_gap &&
               relative_gap(obj, *options.reference_objective) <= *options.target_gap) {
      stats.status = ActiveSetStatus::kTargetGap;
      stop = true;
    } else {
      record.added = static_cast<std::int64_t>(
          grow_active_set(state, parts.nonzero, obj).size());
      record.removed = static_cast<std::int64_t>(
          prune_active_set(state, obj, ldr, options.zero_tol).size());
    }
    record.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    stats.iterations.push_back(record);
    if (stop) break;
  }
  if (stats.iterations.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  }
  if (stats.status == ActiveSetStatus::kInfeasible) {
    result.ldr = last;
    stats.objective = kInfinity;
  } else if (best) {
    result.ldr = *best;
    stats.objective = *best->c0;
  } else {
    result.ldr = last;
    stats.objective = kInfinity;
  }
  if (options.reference_objective && std::isfinite(stats.objective)) {
    stats.gap = relative_gap(stats.objective, *options.reference_objective);
  }
  stats.final_active = state.active;
  return result;
}

std::string stats_csv(const IterationStats& stats) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,active_size,K_A,objective,max_residual,added,removed,millis\n";
  for (const IterationRecord& r : stats.iterations) {
    out << r.iteration << ',' << r.active_size << ',' << r.K_A << ','
        << r.objective << ',' << r.max_residual << ',' << r.added << ','
        << r.removed << ',' << r.millis << '\n';
  }
  return out.str();
}

}  // namespace sparseldr
