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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sparseldr/active_set_method.hpp"
#include "sparseldr/error.hpp"
#include "sparseldr/evaluation.hpp"
#include "sparseldr/formulations.hpp"
#include "sparseldr/generators.hpp"
#include "sparseldr/lp_solver.hpp"
#include "sparseldr/tuple_index.hpp"
#include "support/random_models.hpp"
#include "support/residual_oracle.hpp"

namespace sparseldr {
namespace {

using testing::Draw;
using testing::DirectResiduals;

// Optimum of the T = 12, E = 3 benchmark, computed once with an independent
// interior-point/simplex solver and frozen.
constexpr double kBenchmark12Optimum = 43844.124046646095;

// Restricted tuple of row i at period s, built directly from the definition.
PeriodTuple DirectTuple(const ROInstance& inst, const ActiveSet& active, int i, int s) {
  PeriodTuple tuple;
  tuple.b = inst.b(i, s);
  for (int t = s; t <= inst.horizon(); ++t) {
    for (int j = 1; j <= inst.n(); ++j) {
      const double a = inst.a(i, t, j);
      if (a != 0.0 && active.contains({t, s, j})) tuple.a.push_back({t, j, a});
    }
  }
  return tuple;
}

bool SameTuple(const PeriodTuple& x, const PeriodTuple& y) {
  if (x.b != y.b || x.a.size() != y.a.size()) return false;
  for (std::size_t e = 0; e < x.a.size(); ++e) {
    if (x.a[e].t != y.a[e].t || x.a[e].j != y.a[e].j || x.a[e].value != y.a[e].value) {
      return false;
    }
  }
  return true;
}

TEST(ActiveSetTest, InsertValidatesDimensions) {
  ActiveSet active(3, 2);
  EXPECT_TRUE(active.insert({2, 1, 2}));
  EXPECT_FALSE(active.insert({2, 1, 2}));
  EXPECT_THROW(active.insert({2, 3, 1}), Error);
  EXPECT_THROW(active.insert({4, 1, 1}), Error);
  EXPECT_THROW(active.insert({1, 1, 3}), Error);
  EXPECT_EQ(ActiveSet::full(3, 2).size(), static_cast<std::size_t>(triple_count(3, 2)));
  EXPECT_EQ(triple_count(25, 3), 975);
}

TEST(ActiveSetTest, FingerprintIgnoresInsertionOrder) {
  ActiveSet a(4, 2);
  ActiveSet b(4, 2);
  a.insert({1, 1, 1});
  a.insert({4, 2, 2});
  b.insert({4, 2, 2});
  b.insert({1, 1, 1});
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  b.insert({3, 3, 1});
  EXPECT_NE(a.fingerprint(), b.fingerprint());
}

TEST(MarkovianTest, Sizes) {
  EXPECT_EQ(markovian_init(5, 2).size(), 18u);
  const ActiveSet a = markovian_init(25, 3);
  EXPECT_EQ(a.size(), 147u);
  EXPECT_TRUE(a.contains({7, 1, 2}));
  EXPECT_TRUE(a.contains({7, 7, 2}));
  EXPECT_FALSE(a.contains({7, 6, 2}));
}

TEST(TupleIndexTest, BenchmarkGroupCounts) {
  const ROInstance inst = gen_production_inventory(benchmark_params(24, 3));
  const TupleIndex none = dedup_tuples(inst, ActiveSet(inst.horizon(), inst.n()));
  EXPECT_EQ(none.count(13), 3);
  const ActiveSet markov = markovian_init(inst.horizon(), inst.n());
  const TupleIndex idx = dedup_tuples(inst, markov);
  EXPECT_LE(idx.total(), tuple_count_bound(147, 24, 3));
  EXPECT_EQ(tuple_count_bound(147, 24, 3), 784);
  const TupleIndex plain = identity_tuples(inst, markov);
  EXPECT_EQ(plain.total(), static_cast<std::int64_t>(inst.horizon()) * (inst.m() + 1));
  EXPECT_FALSE(plain.merged);
}

TEST(TupleIndexTest, GroupsHoldExactlyTheEqualTuples) {
  Draw draw(61);
  for (int trial = 0; trial < 30; ++trial) {
    const ROInstance inst = testing::random_instance(draw);
    const ActiveSet active = testing::random_active_set(draw, inst.horizon(), inst.n(), 0.5);
    const TupleIndex idx = dedup_tuples(inst, active);
    EXPECT_EQ(idx.active_fingerprint, active.fingerprint());
    for (int s = 1; s <= inst.horizon(); ++s) {
      for (int i = 0; i <= inst.m(); ++i) {
        const PeriodTuple mine = DirectTuple(inst, active, i, s);
        EXPECT_TRUE(SameTuple(mine, idx.groups[s - 1][idx.pi[s - 1][i]]));
        for (int l = 0; l < i; ++l) {
          const bool same = SameTuple(mine, DirectTuple(inst, active, l, s));
          EXPECT_EQ(same, idx.pi[s - 1][i] == idx.pi[s - 1][l]);
        }
      }
    }
  }
}

TEST(TupleIndexTest, BoundHoldsOnRandomBenchmarkActiveSets) {
  Draw draw(67);
  for (int E : {3, 4}) {
    const ROInstance inst = gen_production_inventory(benchmark_params(12, E));
    for (int trial = 0; trial < 20; ++trial) {
      const ActiveSet active =
          testing::random_active_set(draw, inst.horizon(), inst.n(), draw.unit());
      EXPECT_LE(dedup_tuples(inst, active).total(),
                tuple_count_bound(static_cast<std::int64_t>(active.size()), 12, E));
    }
  }
}

TEST(ResidualTest, SchemeMatchesDirectSum) {
  Draw draw(71);
  for (int trial = 0; trial < 25; ++trial) {
    const ROInstance inst = testing::random_instance(draw);
    const ActiveSet active = testing::random_active_set(draw, inst.horizon(), inst.n(), 0.4);
    const TupleIndex idx = dedup_tuples(inst, active);
    const LPModel dual = build_D_A(inst, active, idx);
    const LPSolution sol = solve(dual);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal);
    const ResidualMap fast = termination_residuals(inst, active, idx, dual, sol);
    const ResidualMap slow = DirectResiduals(inst, active, idx, dual, sol);
    ASSERT_EQ(fast.size(), slow.size());
    for (const auto& [key, r] : slow) {
      ASSERT_TRUE(fast.count(key));
      EXPECT_NEAR(fast.at(key), r, 1e-12 * std::max(1.0, std::abs(r)));
    }
  }
}

TEST(ResidualTest, FullActiveSetHasNoCandidates) {
  Draw draw(73);
  const ROInstance inst = testing::random_instance(draw);
  const ActiveSet full = ActiveSet::full(inst.horizon(), inst.n());
  const TupleIndex idx = dedup_tuples(inst, full);
  const LPModel dual = build_D_A(inst, full, idx);
  const LPSolution sol = solve(dual);
  EXPECT_TRUE(termination_residuals(inst, full, idx, dual, sol).empty());
}

TEST(PartitionTest, ThresholdScalesWithLargestResidual) {
  ResidualMap r;
  r[{1, 1, 1}] = 0.0;
  r[{2, 1, 1}] = 1e-6;
  r[{2, 2, 1}] = -10.0;
  const CandidatePartition p = partition_candidates(r, 1e-7);
  ASSERT_EQ(p.nonzero.size(), 1u);
  EXPECT_EQ(p.nonzero[0], (Triple{2, 2, 1}));
  EXPECT_EQ(p.zero.size(), 2u);
  EXPECT_EQ(partition_candidates(r, 1e-8).nonzero.size(), 2u);
  EXPECT_THROW(partition_candidates(r, 0.0), Error);
  EXPECT_TRUE(partition_candidates({}, 1e-7).nonzero.empty());
}

TEST(GrowTest, OnePeriodPerStageAndDecision) {
  ActiveSetState state = make_state(ActiveSet(4, 2), 9);
  const std::vector<Triple> candidates = {{3, 1, 1}, {3, 2, 1}, {3, 3, 1}, {4, 2, 2}};
  const std::vector<Triple> added = grow_active_set(state, candidates, 12.5);
  ASSERT_EQ(added.size(), 2u);
  EXPECT_EQ(added[0].t, 3);
  EXPECT_EQ(added[1], (Triple{4, 2, 2}));
  EXPECT_EQ(state.active.size(), 2u);
  EXPECT_EQ(state.added_value.at(added[0]), 12.5);
  EXPECT_THROW(grow_active_set(state, {}, 0.0), Error);
}

TEST(GrowTest, DrawsAreSeededAndCoverAllPeriods) {
  const std::vector<Triple> candidates = {{5, 1, 1}, {5, 2, 1}, {5, 4, 1}, {5, 5, 1}};
  std::map<int, int> hits;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ActiveSetState a = make_state(ActiveSet(5, 1), seed);
    ActiveSetState b = make_state(ActiveSet(5, 1), seed);
    const auto x = grow_active_set(a, candidates, 0.0);
    const auto y = grow_active_set(b, candidates, 0.0);
    ASSERT_EQ(x, y);
    ++hits[x[0].s];
  }
  EXPECT_EQ(hits.size(), 4u);
  for (const auto& [s, count] : hits) EXPECT_GT(count, 20) << "period " << s;
}

TEST(PruneTest, RemovesOnlyZeroTriplesAddedAtHigherObjectives) {
  ActiveSetState state = make_state(markovian_init(3, 1), 0);
  state.active.insert({3, 2, 1});
  state.added_value[{3, 2, 1}] = 10.0;
  state.active.insert({2, 1, 1});  // already Markovian
  state.active.insert({3, 1, 1});
  state.added_value[{3, 1, 1}] = 10.0;
  LinearDecisionRule ldr;
  ldr.set({3, 2, 1}, 0.0);
  ldr.set({3, 1, 1}, 0.5);
  EXPECT_TRUE(prune_active_set(state, 10.0, ldr).empty());
  const std::vector<Triple> removed = prune_active_set(state, 9.0, ldr);
  ASSERT_EQ(removed.size(), 1u);
  EXPECT_EQ(removed[0], (Triple{3, 2, 1}));
  EXPECT_FALSE(state.active.contains({3, 2, 1}));
  EXPECT_TRUE(state.active.contains({3, 1, 1}));
}

TEST(SolveActiveSetTest, ReachesRobustCounterpartOptimum) {
  Draw draw(79);
  for (int trial = 0; trial < 15; ++trial) {
    const ROInstance inst = testing::random_instance(draw);
    const double rc = solve(build_rc_primal_full(inst)).objective;
    ActiveSetOptions options;
    options.seed = trial;
    const ActiveSetResult result = solve_active_set(inst, options);
    EXPECT_EQ(result.stats.status, ActiveSetStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(result.stats.objective, rc, 1e-6 * std::max(1.0, std::abs(rc)))
        << "trial " << trial;
    EXPECT_TRUE(check_feasibility(inst, result.ldr, 1e-7).feasible);
    const auto& its = result.stats.iterations;
    for (std::size_t k = 1; k < its.size(); ++k) {
      EXPECT_LE(its[k].objective, its[k - 1].objective + 1e-9) << "trial " << trial;
    }
  }
}

TEST(SolveActiveSetTest, SameSeedSameTrajectory) {
  Draw draw(83);
  const ROInstance inst = testing::random_instance(draw);
  ActiveSetOptions options;
  options.seed = 5;
  options.initial = ActiveSet(inst.horizon(), inst.n());
  const ActiveSetResult a = solve_active_set(inst, options);
  const ActiveSetResult b = solve_active_set(inst, options);
  ASSERT_EQ(a.stats.iterations.size(), b.stats.iterations.size());
  for (std::size_t k = 0; k < a.stats.iterations.size(); ++k) {
    EXPECT_EQ(a.stats.iterations[k].objective, b.stats.iterations[k].objective);
    EXPECT_EQ(a.stats.iterations[k].active_size, b.stats.iterations[k].active_size);
  }
  EXPECT_EQ(a.stats.final_active.members(), b.stats.final_active.members());
}

TEST(SolveActiveSetTest, BenchmarkTwelvePeriods) {
  const ROInstance inst = gen_production_inventory(benchmark_params(12, 3));
  ActiveSetOptions options;
  options.reference_objective = kBenchmark12Optimum;
  const ActiveSetResult result = solve_active_set(inst, options);
  EXPECT_EQ(result.stats.status, ActiveSetStatus::kOptimal);
  EXPECT_NEAR(result.stats.objective, kBenchmark12Optimum, 1e-6 * kBenchmark12Optimum);
  ASSERT_TRUE(result.stats.gap.has_value());
  EXPECT_LE(std::abs(*result.stats.gap), 1e-6);
  EXPECT_TRUE(check_feasibility(inst, result.ldr, 1e-7).feasible);
}

TEST(SolveActiveSetTest, TargetGapStopsEarly) {
  const ROInstance inst = gen_production_inventory(benchmark_params(12, 3));
  ActiveSetOptions options;
  options.reference_objective = kBenchmark12Optimum;
  options.target_gap = 0.5;
  const ActiveSetResult result = solve_active_set(inst, options);
  EXPECT_EQ(result.stats.status, ActiveSetStatus::kTargetGap);
  EXPECT_EQ(result.stats.iterations.size(), 1u);
}

TEST(SolveActiveSetTest, IterationCap) {
  Draw draw(89);
  const ROInstance inst = testing::random_instance(draw);
  ActiveSetOptions options;
  options.max_iterations = 1;
  options.initial = ActiveSet(inst.horizon(), inst.n());
  const ActiveSetResult result = solve_active_set(inst, options);
  EXPECT_EQ(result.stats.iterations.size(), 1u);
  options.max_iterations = 0;
  EXPECT_THROW(solve_active_set(inst, options), Error);
}

TEST(StatsTest, CsvHeaderAndRows) {
  IterationStats stats;
  IterationRecord r;
  r.iteration = 1;
  r.active_size = 10;
  r.K_A = 20;
  r.objective = 3.5;
  r.added = 2;
  stats.iterations.push_back(r);
  std::istringstream in(stats_csv(stats));
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "iteration,active_size,K_A,objective,max_residual,added,removed,millis");
  EXPECT_EQ(row.substr(0, 9), "1,10,20,3");
  EXPECT_NEAR(relative_gap(101.0, 100.0), 0.01, 1e-15);
  EXPECT_NEAR(relative_gap(0.5, 0.0), 0.5, 1e-15);
}

}  // namespace
}  // namespace sparseldr
