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

#ifndef SPARSELDR_GENERATORS_HPP_
#define SPARSELDR_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sparseldr/instance.hpp"

namespace sparseldr {

// Multi-factory production planning against a shared warehouse. Vectors
// indexed by period are 0-based over t = 1..T; demand vectors cover the
// uncertain stages 2..T+1.
struct ProductionInventorySpec {
  int T = 0;
  int E = 0;
  std::vector<std::vector<double>> cost;      // [T][E]
  std::vector<std::vector<double>> capacity;  // [T][E], per period
  std::vector<double> total_capacity;         // [E]
  double v_min = 0.0;
  double v_max = 0.0;
  double v_initial = 0.0;
  std::vector<double> demand_lower;  // [T]
  std::vector<double> demand_upper;  // [T]
  std::vector<int> leadtime;         // empty, or [E] with values in [0, T]
};

// Single-item ordering with holding and backorder costs.
struct NewsvendorSpec {
  int T = 0;
  std::vector<double> cost;       // [T]
  std::vector<double> holding;    // [T]
  std::vector<double> backorder;  // [T]
  std::vector<double> capacity;   // [T]
  double v_initial = 0.0;
  std::vector<double> demand_lower;  // [T]
  std::vector<double> demand_upper;  // [T]
};

inline constexpr double kBenchmarkDemandSpread = 0.2;

// Seasonal benchmark family with T periods and E factories (E >= 2).
ProductionInventorySpec benchmark_params(int T, int E,
                                         double theta = kBenchmarkDemandSpread);

// Horizon T + 1 (trailing stage with zero capacity), n = E decisions.
ROInstance gen_production_inventory(const ProductionInventorySpec& spec);

// Horizon T + 1, n = 2 (order quantity, cost epigraph).
ROInstance gen_newsvendor(const NewsvendorSpec& spec);

// Uniformly drawn newsvendor data for sparsity experiments.
NewsvendorSpec random_newsvendor(int T, std::uint64_t seed);

std::string spec_to_json(const ProductionInventorySpec& spec);
std::string spec_to_json(const NewsvendorSpec& spec);
// Applies a JSON merge patch to the serialized spec and parses the result.
ProductionInventorySpec apply_overrides(const ProductionInventorySpec& spec,
                                        const std::string& patch_json);
NewsvendorSpec apply_overrides(const NewsvendorSpec& spec,
                               const std::string& patch_json);

}  // namespace sparseldr

#endif  // SPARSELDR_GENERATORS_HPP_
