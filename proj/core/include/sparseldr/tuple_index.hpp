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

#ifndef SPARSELDR_TUPLE_INDEX_HPP_
#define SPARSELDR_TUPLE_INDEX_HPP_

#include <cstdint>
#include <vector>

#include "sparseldr/active_set.hpp"
#include "sparseldr/instance.hpp"

namespace sparseldr {

// Restriction of a row to period s: b_{i,s} and a_{i,t,j} over the active
// triples (t, s, j).
struct PeriodTuple {
  double b = 0.0;
  std::vector<DecisionCoef> a;  // (t, j, a_{i,t,j}), sorted, nonzero only
  bool is_zero() const { return b == 0.0 && a.empty(); }
};

// Rows grouped per period by identical restricted tuples.
struct TupleIndex {
  int horizon = 0;
  int num_rows = 0;  // m + 1
  // pi[s-1][i]: group of row i at period s.
  std::vector<std::vector<int>> pi;
  // groups[s-1][k]: representative tuple of group k at period s.
  std::vector<std::vector<PeriodTuple>> groups;
  std::uint64_t active_fingerprint = 0;
  std::size_t active_size = 0;
  bool merged = true;  // false when every row is its own group

  int count(int s) const { return static_cast<int>(groups[s - 1].size()); }
  std::int64_t total() const;
};

// Groups rows by bitwise-equal restricted tuples.
TupleIndex dedup_tuples(const ROInstance& instance, const ActiveSet& active);

// One group per (row, period); no merging.
TupleIndex identity_tuples(const ROInstance& instance, const ActiveSet& active);

// 4|A| + ET + 5T + E + 1 for production-inventory instances.
std::int64_t tuple_count_bound(std::int64_t active_size, std::int64_t T,
                               std::int64_t E);

}  // namespace sparseldr

#endif  // SPARSELDR_TUPLE_INDEX_HPP_
