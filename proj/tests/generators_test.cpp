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
#include <numbers>

#include "sparseldr/error.hpp"
#include "sparseldr/generators.hpp"

namespace sparseldr {
namespace {

ProductionInventorySpec SinglePeriodSpec() {
  ProductionInventorySpec spec;
  spec.T = 1;
  spec.E = 1;
  spec.cost = {{2.0}};
  spec.capacity = {{50.0}};
  spec.total_capacity = {50.0};
  spec.v_min = 0.0;
  spec.v_max = 100.0;
  spec.v_initial = 5.0;
  spec.demand_lower = {10.0};
  spec.demand_upper = {20.0};
  return spec;
}

TEST(BenchmarkParamsTest, SeasonalShapeAndScaling) {
  const ProductionInventorySpec spec = benchmark_params(24, 3);
  ASSERT_EQ(spec.cost.size(), 24u);
  ASSERT_EQ(spec.cost[0].size(), 3u);
  // phi(2) = 1, so stage 2 demand is 1000 (1 +- 0.2).
  EXPECT_NEAR(spec.demand_lower[0], 800.0, 1e-9);
  EXPECT_NEAR(spec.demand_upper[0], 1200.0, 1e-9);
  EXPECT_NEAR(spec.capacity[0][0], 567.0, 1e-12);
  EXPECT_NEAR(spec.total_capacity[2], 13600.0, 1e-12);
  // Factory e costs (1 + (e-1)/(E-1)) phi(t).
  const double phi1 = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * (1 - 2) / 24.0);
  EXPECT_NEAR(spec.cost[0][0], phi1, 1e-12);
  EXPECT_NEAR(spec.cost[0][2], 2.0 * phi1, 1e-12);
  EXPECT_EQ(spec.v_min, 500.0);
  EXPECT_EQ(spec.v_max, 2000.0);
  EXPECT_EQ(spec.v_initial, 500.0);

  const ProductionInventorySpec half = benchmark_params(12, 6);
  EXPECT_NEAR(half.capacity[0][0], 567.0, 1e-12);
  EXPECT_NEAR(half.total_capacity[0], 6800.0, 1e-12);
}

TEST(BenchmarkParamsTest, RejectsSingleFactory) {
  EXPECT_THROW(benchmark_params(24, 1), Error);
  EXPECT_THROW(benchmark_params(0, 3), Error);
}

TEST(ProductionInventoryTest, SinglePeriodRowCount) {
  const ROInstance inst = gen_production_inventory(SinglePeriodSpec());
  EXPECT_EQ(inst.horizon(), 2);
  EXPECT_EQ(inst.n(), 1);
  // Capacity, two bound rows per stage, two inventory rows.
  EXPECT_EQ(inst.m(), 7);
  EXPECT_EQ(inst.meta().generator, "prodinv");
}

TEST(ProductionInventoryTest, RowStructure) {
  const ROInstance inst = gen_production_inventory(benchmark_params(6, 3));
  const int T = 6;
  const int E = 3;
  const int H = T + 1;
  EXPECT_EQ(inst.m(), E + 2 * E * H + 2 * T);
  int capacity = 0;
  int inventory = 0;
  for (int i = 1; i <= inst.m(); ++i) {
    const Row& row = inst.row(i);
    if (row.label == RowLabel::kCapacity) {
      ++capacity;
      EXPECT_EQ(row.a.size(), static_cast<std::size_t>(H));
    }
    if (row.label == RowLabel::kInventoryUpper) {
      ++inventory;
      EXPECT_DOUBLE_EQ(row.c, 1500.0);
    }
    if (row.label == RowLabel::kBoundUpper && row.a[0].t == H) {
      EXPECT_EQ(row.c, 0.0);
    }
  }
  EXPECT_EQ(capacity, E);
  EXPECT_EQ(inventory, T);
  // The inventory row of period 3 sees orders of periods 1..3 and demands 2..4.
  int seen = 0;
  for (int i = 1; i <= inst.m(); ++i) {
    const Row& row = inst.row(i);
    if (row.label != RowLabel::kInventoryUpper) continue;
    if (++seen != 3) continue;
    EXPECT_EQ(row.a.size(), 9u);
    ASSERT_EQ(row.b.size(), 3u);
    EXPECT_EQ(row.b.front().s, 2);
    EXPECT_EQ(row.b.back().s, 4);
  }
}

TEST(ProductionInventoryTest, LeadTimeDelaysDeliveries) {
  ProductionInventorySpec spec = benchmark_params(6, 3);
  spec.leadtime = {0, 2, 6};
  const ROInstance inst = gen_production_inventory(spec);
  EXPECT_EQ(inst.meta().generator, "prodinv-leadtime");
  int seen = 0;
  for (int i = 1; i <= inst.m(); ++i) {
    const Row& row = inst.row(i);
    if (row.label != RowLabel::kInventoryUpper) continue;
    if (++seen != 3) continue;
    // Factory 1: periods 1..3, factory 2: period 1, factory 3: none.
    EXPECT_EQ(row.a.size(), 4u);
  }
  spec.leadtime = {0, 7, 0};
  EXPECT_THROW(gen_production_inventory(spec), Error);
}

TEST(ProductionInventoryTest, ValidationErrors) {
  ProductionInventorySpec spec = SinglePeriodSpec();
  spec.v_initial = -1.0;
  EXPECT_THROW(gen_production_inventory(spec), Error);
  spec = SinglePeriodSpec();
  spec.capacity = {{-1.0}};
  EXPECT_THROW(gen_production_inventory(spec), Error);
  spec = SinglePeriodSpec();
  spec.demand_upper = {};
  EXPECT_THROW(gen_production_inventory(spec), Error);
}

TEST(NewsvendorTest, ShapeAndDeterminism) {
  const NewsvendorSpec spec = random_newsvendor(6, 42);
  const NewsvendorSpec again = random_newsvendor(6, 42);
  EXPECT_EQ(spec_to_json(spec), spec_to_json(again));
  EXPECT_NE(spec_to_json(spec), spec_to_json(random_newsvendor(6, 43)));
  const ROInstance inst = gen_newsvendor(spec);
  EXPECT_EQ(inst.horizon(), 7);
  EXPECT_EQ(inst.n(), 2);
  for (double c : spec.capacity) {
    EXPECT_GE(c, 50.0);
    EXPECT_LE(c, 150.0);
  }
}

TEST(OverridesTest, MergePatchReplacesFields) {
  const ProductionInventorySpec base = benchmark_params(12, 3);
  const ProductionInventorySpec patched =
      apply_overrides(base, R"({"v_max": 2500, "total_capacity": [1, 2, 3]})");
  EXPECT_EQ(patched.v_max, 2500.0);
  EXPECT_EQ(patched.total_capacity, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(patched.cost, base.cost);
  EXPECT_THROW(apply_overrides(base, "{not json"), Error);
}

TEST(OverridesTest, NewsvendorPatch) {
  const NewsvendorSpec base = random_newsvendor(3, 1);
  const NewsvendorSpec patched = apply_overrides(base, R"({"v_initial": 7})");
  EXPECT_EQ(patched.v_initial, 7.0);
  EXPECT_EQ(patched.holding, base.holding);
}

}  // namespace
}  // namespace sparseldr
