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

#ifndef SPARSELDR_BOUNDS_HPP_
#define SPARSELDR_BOUNDS_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace sparseldr {

enum class SparsityKind { kProductionInventory, kLeadtime, kNewsvendor, kBudget };

std::optional<SparsityKind> ParseSparsityKind(const std::string& text);

struct SparsityParams {
  std::int64_t T = 0;
  std::int64_t E = 0;
  std::int64_t delta = 0;  // leadtime only
  std::int64_t k = 0;      // budget only
};

// Closed-form nonzero bounds for vertex-optimal decision rules:
//   production_inventory  2 + 8E + 10T + 6ET
//   leadtime              2 + 8E + 10T + 6E(T - delta)
//   newsvendor            10 + 12T
//   budget                2 + 8E + 10T + 6ET + 12kT
std::int64_t sparsity_bound(SparsityKind kind, const SparsityParams& params);

// Number of coefficients of a full decision rule, n T (T + 1) / 2.
std::int64_t ldr_param_count(std::int64_t T, std::int64_t n);

}  // namespace sparseldr

#endif  // SPARSELDR_BOUNDS_HPP_
