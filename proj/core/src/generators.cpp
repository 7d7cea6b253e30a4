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

#include "sparseldr/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "json.hpp"
#include "sparseldr/error.hpp"

namespace sparseldr {
namespace {

using nlohmann::json;

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

void RequireSize(const std::vector<double>& v, std::size_t n,
                 const char* name) {
  Require(v.size() == n, std::string(name) + " must have " +
                             std::to_string(n) + " entries");
}

BoxUncertainty DemandBox(const std::vector<double>& lower,
                         const std::vector<double>& upper) {
  std::vector<double> lo{1.0};
  std::vector<double> hi{1.0};
  lo.insert(lo.end(), lower.begin(), lower.end());
  hi.insert(hi.end(), upper.begin(), upper.end());
  return BoxUncertainty(std::move(lo), std::move(hi));
}

void Validate(const ProductionInventorySpec& spec) {
  Require(spec.T >= 1 && spec.E >= 1, "T and E must be >= 1");
  const std::size_t T = spec.T;
  const std::size_t E = spec.E;
  Require(spec.cost.size() == T && spec.capacity.size() == T,
          "cost and capacity need T rows");
  for (std::size_t t = 0; t < T; ++t) {
    RequireSize(spec.cost[t], E, "cost[t]");
    RequireSize(spec.capacity[t], E, "capacity[t]");
    for (double p : spec.capacity[t]) Require(p >= 0.0, "capacity must be >= 0");
  }
  RequireSize(spec.total_capacity, E, "total_capacity");
  for (double q : spec.total_capacity) Require(q >= 0.0, "Q must be >= 0");
  Require(spec.v_min <= spec.v_initial && spec.v_initial <= spec.v_max,
          "need Vmin <= v1 <= Vmax");
  RequireSize(spec.demand_lower, T, "demand_lower");
  RequireSize(spec.demand_upper, T, "demand_upper");
  if (!spec.leadtime.empty()) {
    Require(spec.leadtime.size() == E, "leadtime needs E entries");
    for (int d : spec.leadtime) Require(d >= 0 && d <= spec.T, "lead time in [0, T]");
  }
}

void Validate(const NewsvendorSpec& spec) {
  Require(spec.T >= 1, "T must be >= 1");
  const std::size_t T = spec.T;
  RequireSize(spec.cost, T, "cost");
  RequireSize(spec.holding, T, "holding");
  RequireSize(spec.backorder, T, "backorder");
  RequireSize(spec.capacity, T, "capacity");
  RequireSize(spec.demand_lower, T, "demand_lower");
  RequireSize(spec.demand_upper, T, "demand_upper");
  for (std::size_t t = 0; t < T; ++t) {
    Require(spec.holding[t] >= 0.0 && spec.backorder[t] >= 0.0,
            "holding and backorder costs must be >= 0");
    Require(spec.capacity[t] >= 0.0, "capacity must be >= 0");
  }
}

json ToJson(const ProductionInventorySpec& s) {
  return json{{"T", s.T},
              {"E", s.E},
              {"cost", s.cost},
              {"capacity", s.capacity},
              {"total_capacity", s.total_capacity},
              {"v_min", s.v_min},
              {"v_max", s.v_max},
              {"v_initial", s.v_initial},
              {"demand_lower", s.demand_lower},
              {"demand_upper", s.demand_upper},
              {"leadtime", s.leadtime}};
}

json ToJson(const NewsvendorSpec& s) {
  return json{{"T", s.T},
              {"cost", s.cost},
              {"holding", s.holding},
              {"backorder", s.backorder},
              {"capacity", s.capacity},
              {"v_initial", s.v_initial},
              {"demand_lower", s.demand_lower},
              {"demand_upper", s.demand_upper}};
}

}  // namespace

ProductionInventorySpec benchmark_params(int T, int E, double theta) {
  Require(E >= 2, "benchmark parameters need E >= 2");
  Require(T >= 1, "T must be >= 1");
  Require(theta >= 0.0 && theta < 1.0, "demand spread must be in [0, 1)");
  const double scale_t = T / 24.0;
  const double scale_e = E / 3.0;
  auto phi = [T](int t) {
    return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * (t - 2) / T);
  };
  ProductionInventorySpec spec;
  spec.T = T;
  spec.E = E;
  spec.cost.assign(T, std::vector<double>(E));
  spec.capacity.assign(T, std::vector<double>(E, 567.0 / (scale_t * scale_e)));
  for (int t = 1; t <= T; ++t) {
    for (int e = 1; e <= E; ++e) {
      spec.cost[t - 1][e - 1] =
          (1.0 + static_cast<double>(e - 1) / (E - 1)) * phi(t);
    }
  }
  spec.total_capacity.assign(E, 13600.0 / scale_e);
  spec.v_min = 500.0;
  spec.v_max = 2000.0;
  spec.v_initial = 500.0;
  for (int t = 2; t <= T + 1; ++t) {
    spec.demand_lower.push_back(1000.0 * (1.0 - theta) * phi(t) / scale_t);
    spec.demand_upper.push_back(1000.0 * (1.0 + theta) * phi(t) / scale_t);
  }
  return spec;
}

ROInstance gen_production_inventory(const ProductionInventorySpec& spec) {
  Validate(spec);
  const int T = spec.T;
  const int E = spec.E;
  const int H = T + 1;
  std::vector<Row> rows;

  Row objective;
  objective.label = RowLabel::kObjective;
  for (int t = 1; t <= T; ++t) {
    for (int e = 1; e <= E; ++e) {
      objective.a.push_back({t, e, spec.cost[t - 1][e - 1]});
    }
  }
  rows.push_back(std::move(objective));

  for (int e = 1; e <= E; ++e) {
    Row row;
    row.label = RowLabel::kCapacity;
    for (int t = 1; t <= H; ++t) row.a.push_back({t, e, 1.0});
    row.c = spec.total_capacity[e - 1];
    rows.push_back(std::move(row));
  }

  for (int t = 1; t <= H; ++t) {
    for (int e = 1; e <= E; ++e) {
      Row ub;
      ub.label = RowLabel::kBoundUpper;
      ub.a.push_back({t, e, 1.0});
      ub.c = t <= T ? spec.capacity[t - 1][e - 1] : 0.0;
      rows.push_back(std::move(ub));
      Row lb;
      lb.label = RowLabel::kBoundLower;
      lb.a.push_back({t, e, -1.0});
      lb.c = 0.0;
      rows.push_back(std::move(lb));
    }
  }

  for (int t = 1; t <= T; ++t) {
    Row ub;
    ub.label = RowLabel::kInventoryUpper;
    for (int e = 1; e <= E; ++e) {
      const int delay = spec.leadtime.empty() ? 0 : spec.leadtime[e - 1];
      for (int l = 1; l <= t - delay; ++l) ub.a.push_back({l, e, 1.0});
    }
    for (int s = 2; s <= t + 1; ++s) ub.b.push_back({s, 1.0});
    ub.c = spec.v_max - spec.v_initial;
    Row lb;
    lb.label = RowLabel::kInventoryLower;
    for (const DecisionCoef& x : ub.a) lb.a.push_back({x.t, x.j, -x.value});
    for (const UncertaintyCoef& x : ub.b) lb.b.push_back({x.s, -x.value});
    lb.c = spec.v_initial - spec.v_min;
    rows.push_back(std::move(ub));
    rows.push_back(std::move(lb));
  }

  InstanceMeta meta;
  meta.generator = spec.leadtime.empty() ? "prodinv" : "prodinv-leadtime";
  meta.T = T;
  meta.E = E;
  meta.params_json = spec_to_json(spec);
  return ROInstance(H, E, DemandBox(spec.demand_lower, spec.demand_upper),
                    std::move(rows), std::move(meta));
}

ROInstance gen_newsvendor(const NewsvendorSpec& spec) {
  Validate(spec);
  const int T = spec.T;
  const int H = T + 1;
  constexpr int kOrder = 1;
  constexpr int kCost = 2;
  std::vector<Row> rows;

  Row objective;
  objective.label = RowLabel::kObjective;
  for (int t = 1; t <= H; ++t) {
    objective.a.push_back({t, kOrder, t <= T ? spec.cost[t - 1] : 1.0});
    objective.a.push_back({t, kCost, 1.0});
  }
  rows.push_back(std::move(objective));

  for (int t = 1; t <= T; ++t) {
    const double h = spec.holding[t - 1];
    const double b = spec.backorder[t - 1];
    Row hold;
    hold.label = RowLabel::kGeneric;
    Row back;
    back.label = RowLabel::kGeneric;
    for (int l = 1; l <= t; ++l) {
      hold.a.push_back({l, kOrder, h});
      back.a.push_back({l, kOrder, -b});
    }
    hold.a.push_back({t + 1, kCost, -1.0});
    back.a.push_back({t + 1, kCost, -1.0});
    for (int s = 2; s <= t + 1; ++s) {
      hold.b.push_back({s, h});
      back.b.push_back({s, -b});
    }
    hold.c = -h * spec.v_initial;
    back.c = b * spec.v_initial;
    rows.push_back(std::move(hold));
    rows.push_back(std::move(back));
  }

  for (int t = 1; t <= H; ++t) {
    Row ub;
    ub.label = RowLabel::kBoundUpper;
    ub.a.push_back({t, kOrder, 1.0});
    ub.c = t <= T ? spec.capacity[t - 1] : 0.0;
    rows.push_back(std::move(ub));
    Row lb;
    lb.label = RowLabel::kBoundLower;
    lb.a.push_back({t, kOrder, -1.0});
    rows.push_back(std::move(lb));
  }

  Row z1;
  z1.label = RowLabel::kBoundLower;
  z1.a.push_back({1, kCost, -1.0});
  rows.push_back(std::move(z1));

  InstanceMeta meta;
  meta.generator = "newsvendor";
  meta.T = T;
  meta.E = 1;
  meta.params_json = spec_to_json(spec);
  return ROInstance(H, 2, DemandBox(spec.demand_lower, spec.demand_upper),
                    std::move(rows), std::move(meta));
}

NewsvendorSpec random_newsvendor(int T, std::uint64_t seed) {
  Require(T >= 1, "T must be >= 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  NewsvendorSpec spec;
  spec.T = T;
  spec.v_initial = uniform(0.0, 50.0);
  for (int t = 0; t < T; ++t) {
    spec.cost.push_back(uniform(0.5, 1.5));
    spec.holding.push_back(uniform(0.1, 1.0));
    spec.backorder.push_back(uniform(1.0, 4.0));
    spec.capacity.push_back(uniform(50.0, 150.0));
    const double lo = uniform(20.0, 80.0);
    spec.demand_lower.push_back(lo);
    spec.demand_upper.push_back(lo + uniform(10.0, 60.0));
  }
  return spec;
}

std::string spec_to_json(const ProductionInventorySpec& spec) {
  return ToJson(spec).dump();
}

std::string spec_to_json(const NewsvendorSpec& spec) {
  return ToJson(spec).dump();
}

ProductionInventorySpec apply_overrides(const ProductionInventorySpec& spec,
                                        const std::string& patch_json) {
  try {
    json doc = ToJson(spec);
    doc.merge_patch(json::parse(patch_json));
    ProductionInventorySpec out;
    out.T = doc.at("T").get<int>();
    out.E = doc.at("E").get<int>();
    doc.at("cost").get_to(out.cost);
    doc.at("capacity").get_to(out.capacity);
    doc.at("total_capacity").get_to(out.total_capacity);
    out.v_min = doc.at("v_min").get<double>();
    out.v_max = doc.at("v_max").get<double>();
    out.v_initial = doc.at("v_initial").get<double>();
    doc.at("demand_lower").get_to(out.demand_lower);
    doc.at("demand_upper").get_to(out.demand_upper);
    if (doc.contains("leadtime") && !doc.at("leadtime").is_null()) {
      doc.at("leadtime").get_to(out.leadtime);
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("spec overrides: ") + e.what());
  }
}

NewsvendorSpec apply_overrides(const NewsvendorSpec& spec,
                               const std::string& patch_json) {
  try {
    json doc = ToJson(spec);
    doc.merge_patch(json::parse(patch_json));
    NewsvendorSpec out;
    out.T = doc.at("T").get<int>();
    doc.at("cost").get_to(out.cost);
    doc.at("holding").get_to(out.holding);
    doc.at("backorder").get_to(out.backorder);
    doc.at("capacity").get_to(out.capacity);
    out.v_initial = doc.at("v_initial").get<double>();
    doc.at("demand_lower").get_to(out.demand_lower);
    doc.at("demand_upper").get_to(out.demand_upper);
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("spec overrides: ") + e.what());
  }
}

}  // namespace sparseldr
