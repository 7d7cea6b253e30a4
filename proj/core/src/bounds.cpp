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

#include "sparseldr/bounds.hpp"

#include "sparseldr/error.hpp"

namespace sparseldr {

std::optional<SparsityKind> ParseSparsityKind(const std::string& text) {
  if (text == "production_inventory" || text == "prodinv") {
    return SparsityKind::kProductionInventory;
  }
  if (text == "leadtime" || text == "prodinv-leadtime") {
    return SparsityKind::kLeadtime;
  }
  if (text == "newsvendor") return SparsityKind::kNewsvendor;
  if (text == "budget") return SparsityKind::kBudget;
  return std::nullopt;
}

std::int64_t sparsity_bound(SparsityKind kind, const SparsityParams& p) {
  if (p.T < 1) throw Error(ErrorCode::kInvalidArgument, "T must be >= 1");
  if (kind != SparsityKind::kNewsvendor && p.E < 1) {
    throw Error(ErrorCode::kInvalidArgument, "E must be >= 1");
  }
  switch (kind) {
    case SparsityKind::kProductionInventory:
      return 2 + 8 * p.E + 10 * p.T + 6 * p.E * p.T;
    case SparsityKind::kLeadtime:
      if (p.delta < 0 || p.delta > p.T) {
        throw Error(ErrorCode::kInvalidArgument, "lead time must be in [0, T]");
      }
      return 2 + 8 * p.E + 10 * p.T + 6 * p.E * (p.T - p.delta);
    case SparsityKind::kNewsvendor:
      return 10 + 12 * p.T;
    case SparsityKind::kBudget:
      if (p.k < 1 || p.k > p.T) {
        throw Error(ErrorCode::kInvalidArgument, "budget k must be in [1, T]");
      }
      return 2 + 8 * p.E + 10 * p.T + 6 * p.E * p.T + 12 * p.k * p.T;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown sparsity kind");
}

std::int64_t ldr_param_count(std::int64_t T, std::int64_t n) {
  if (T < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "T and n must be >= 1");
  }
  return n * T * (T + 1) / 2;
}

}  // namespace sparseldr
