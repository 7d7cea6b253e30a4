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

#include <cmath>

#include "sparseldr/bounds.hpp"
#include "sparseldr/error.hpp"
#include "sparseldr/evaluation.hpp"
#include "sparseldr/instance.hpp"
#include "sparseldr/instance_io.hpp"
#include "support/random_models.hpp"

namespace sparseldr {
namespace {

using testing::Draw;

// H = 2, n = 1, one constraint 1*x1 + 2*x2 - 0.5*zeta2 <= 7 on zeta2 in [0, 2].
ROInstance TwoStageInstance() {
  BoxUncertainty box({1.0, 0.0}, {1.0, 2.0});
  Row objective;
  objective.label = RowLabel::kObjective;
  objective.a = {{1, 1, 1.0}};
  Row row;
  row.a = {{1, 1, 1.0}, {2, 1, 2.0}};
  row.b = {{2, 0.5}};
  row.c = 7.0;
  return ROInstance(2, 1, box, {objective, row});
}

TEST(RowTest, NormalizeSortsMergesAndDropsZeros) {
  Row row;
  row.a = {{2, 1, 1.0}, {1, 2, 3.0}, {2, 1, -1.0}, {1, 1, 0.0}, {1, 2, 1.0}};
  row.b = {{3, 1.0}, {1, 2.0}, {3, 0.5}, {2, 0.0}};
  normalize_row(row);
  ASSERT_EQ(row.a.size(), 1u);
  EXPECT_EQ(row.a[0].t, 1);
  EXPECT_EQ(row.a[0].j, 2);
  EXPECT_DOUBLE_EQ(row.a[0].value, 4.0);
  ASSERT_EQ(row.b.size(), 2u);
  EXPECT_EQ(row.b[0].s, 1);
  EXPECT_DOUBLE_EQ(row.b[1].value, 1.5);
}

TEST(InstanceTest, AccessorsReadStoredCoefficients) {
  const ROInstance inst = TwoStageInstance();
  EXPECT_EQ(inst.horizon(), 2);
  EXPECT_EQ(inst.n(), 1);
  EXPECT_EQ(inst.m(), 1);
  EXPECT_DOUBLE_EQ(inst.a(1, 2, 1), 2.0);
  EXPECT_DOUBLE_EQ(inst.a(1, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(inst.a(0, 2, 1), 0.0);
  EXPECT_DOUBLE_EQ(inst.b(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(inst.b(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(inst.c(1), 7.0);
  EXPECT_EQ(inst.decision_nonzeros(), 3);
}

TEST(InstanceTest, RejectsOutOfRangeDecision) {
  BoxUncertainty box({1.0, 0.0}, {1.0, 1.0});
  Row objective;
  Row row;
  row.a = {{3, 1, 1.0}};
  EXPECT_THROW(ROInstance(2, 1, box, {objective, row}), Error);
  row.a = {{1, 2, 1.0}};
  EXPECT_THROW(ROInstance(2, 1, box, {objective, row}), Error);
}

TEST(InstanceTest, RejectsMismatchedBoxAndMissingObjective) {
  BoxUncertainty box({1.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  EXPECT_THROW(ROInstance(2, 1, box, {Row{}}), Error);
  BoxUncertainty ok({1.0, 0.0}, {1.0, 1.0});
  EXPECT_THROW(ROInstance(2, 1, ok, {}), Error);
}

TEST(InstanceTest, RejectsNonFiniteData) {
  BoxUncertainty box({1.0, 0.0}, {1.0, 1.0});
  Row row;
  row.c = std::nan("");
  EXPECT_THROW(ROInstance(2, 1, box, {Row{}, row}), Error);
}

TEST(BoxTest, FirstStageIsPinned) {
  EXPECT_THROW(BoxUncertainty({0.0, 0.0}, {1.0, 1.0}), Error);
  EXPECT_THROW(BoxUncertainty({1.0, 2.0}, {1.0, 1.0}), Error);
  BoxUncertainty box({1.0, -1.0}, {1.0, 3.0});
  EXPECT_EQ(box.horizon(), 2);
  EXPECT_DOUBLE_EQ(box.lower(2), -1.0);
  EXPECT_DOUBLE_EQ(box.upper(2), 3.0);
}

TEST(DecisionRuleTest, SetGetAndErase) {
  LinearDecisionRule ldr;
  ldr.set({2, 1, 1}, 1.5);
  EXPECT_TRUE(ldr.contains({2, 1, 1}));
  EXPECT_DOUBLE_EQ(ldr.get({2, 1, 1}), 1.5);
  EXPECT_DOUBLE_EQ(ldr.get({2, 2, 1}), 0.0);
  EXPECT_THROW(ldr.set({1, 2, 1}, 1.0), Error);
  ldr.erase({2, 1, 1});
  EXPECT_EQ(ldr.size(), 0u);
}

TEST(WorstCaseTest, HandComputedRow) {
  const ROInstance inst = TwoStageInstance();
  LinearDecisionRule ldr;
  ldr.set({1, 1, 1}, 3.0);
  ldr.set({2, 1, 1}, 1.0);
  ldr.set({2, 2, 1}, 0.5);
  // 3 + 2 (1 + 0.5 z) - 0.5 z = 5 + 0.5 z, largest at z = 2.
  EXPECT_DOUBLE_EQ(worst_case_row_value(inst, ldr, 1), 6.0);
  EXPECT_DOUBLE_EQ(worst_case_row_value(inst, ldr, 0), 3.0);
  const WorstCaseReport report = check_feasibility(inst, ldr, 1e-9);
  EXPECT_TRUE(report.feasible);
  EXPECT_DOUBLE_EQ(report.violation[1], -1.0);
  EXPECT_DOUBLE_EQ(report.objective, 3.0);

  ldr.set({2, 2, 1}, 1.5);  // 5 + 2.5 z -> 10 > 7
  const WorstCaseReport bad = check_feasibility(inst, ldr, 1e-9);
  EXPECT_FALSE(bad.feasible);
  EXPECT_EQ(bad.worst_row, 1);
  EXPECT_DOUBLE_EQ(bad.max_violation, 3.0);
}

TEST(WorstCaseTest, ClosedFormMatchesCornerEnumeration) {
  Draw draw(11);
  testing::InstanceShape shape;
  shape.max_horizon = 7;
  for (int trial = 0; trial < 40; ++trial) {
    const ROInstance inst = testing::random_instance(draw, shape);
    const LinearDecisionRule ldr =
        testing::random_ldr(draw, inst.horizon(), inst.n(), 0.6);
    for (int i = 0; i <= inst.m(); ++i) {
      const double fast = worst_case_row_value(inst, ldr, i);
      const double slow = brute_force_worst_case(inst, ldr, i);
      EXPECT_NEAR(fast, slow, 1e-9 * (1.0 + std::abs(slow)));
    }
  }
}

TEST(WorstCaseTest, BruteForceRefusesLongHorizons) {
  const int H = kMaxBruteForceStages + 2;
  std::vector<double> lo(H, 0.0);
  std::vector<double> hi(H, 1.0);
  lo[0] = 1.0;
  BoxUncertainty box(lo, hi);
  ROInstance inst(H, 1, box, {Row{}});
  EXPECT_THROW(brute_force_worst_case(inst, LinearDecisionRule{}, 0), Error);
}

TEST(CountNonzerosTest, ThresholdIsRelativeToLargestEntry) {
  LinearDecisionRule ldr;
  ldr.set({1, 1, 1}, 1000.0);
  ldr.set({2, 1, 1}, 1e-7);
  ldr.set({2, 2, 1}, 1e-5);
  ldr.set({2, 2, 2}, -3.0);
  ldr.c0 = 5.0;
  EXPECT_EQ(count_nonzeros(ldr, 1e-9), 3);
  EXPECT_EQ(count_nonzeros(ldr, 1e-7), 2);
  EXPECT_EQ(count_nonzeros(ldr, 1e-9, 1, 0), 1);
  EXPECT_EQ(count_nonzeros(ldr, 1e-9, 0, 2), 1);
}

TEST(BoundsTest, ClosedForms) {
  EXPECT_EQ(sparsity_bound(SparsityKind::kProductionInventory, {24, 3, 0, 0}), 698);
  EXPECT_EQ(sparsity_bound(SparsityKind::kLeadtime, {24, 3, 24, 0}), 266);
  EXPECT_EQ(sparsity_bound(SparsityKind::kNewsvendor, {24, 0, 0, 0}), 298);
  EXPECT_EQ(sparsity_bound(SparsityKind::kBudget, {24, 3, 0, 2}), 1274);
  EXPECT_EQ(sparsity_bound(SparsityKind::kLeadtime, {24, 3, 0, 0}),
            sparsity_bound(SparsityKind::kProductionInventory, {24, 3, 0, 0}));
}

TEST(BoundsTest, RejectsInvalidParameters) {
  EXPECT_THROW(sparsity_bound(SparsityKind::kProductionInventory, {0, 3, 0, 0}), Error);
  EXPECT_THROW(sparsity_bound(SparsityKind::kLeadtime, {10, 3, 11, 0}), Error);
  EXPECT_THROW(sparsity_bound(SparsityKind::kBudget, {10, 3, 0, 0}), Error);
  EXPECT_THROW(ldr_param_count(0, 3), Error);
}

TEST(BoundsTest, ParameterCount) {
  EXPECT_EQ(ldr_param_count(24, 3), 900);
  EXPECT_EQ(ldr_param_count(240, 5), 144600);
  EXPECT_EQ(ParseSparsityKind("prodinv"), SparsityKind::kProductionInventory);
  EXPECT_EQ(ParseSparsityKind("newsvendor"), SparsityKind::kNewsvendor);
  EXPECT_FALSE(ParseSparsityKind("unknown").has_value());
}

TEST(InstanceIoTest, JsonRoundTripPreservesEveryRow) {
  Draw draw(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ROInstance inst = testing::random_instance(draw);
    const ROInstance back = instance_from_json(instance_to_json(inst));
    ASSERT_EQ(back.horizon(), inst.horizon());
    ASSERT_EQ(back.n(), inst.n());
    ASSERT_EQ(back.m(), inst.m());
    EXPECT_EQ(back.box().lower(), inst.box().lower());
    EXPECT_EQ(back.box().upper(), inst.box().upper());
    for (int i = 0; i <= inst.m(); ++i) {
      const Row& a = inst.row(i);
      const Row& b = back.row(i);
      ASSERT_EQ(a.a.size(), b.a.size());
      for (std::size_t e = 0; e < a.a.size(); ++e) {
        EXPECT_EQ(a.a[e].t, b.a[e].t);
        EXPECT_EQ(a.a[e].j, b.a[e].j);
        EXPECT_EQ(a.a[e].value, b.a[e].value);
      }
      ASSERT_EQ(a.b.size(), b.b.size());
      EXPECT_EQ(a.c, b.c);
      EXPECT_EQ(a.label, b.label);
    }
  }
}

TEST(InstanceIoTest, MalformedJsonIsAParseError) {
  try {
    instance_from_json("{\"horizon\": ");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

}  // namespace
}  // namespace sparseldr
