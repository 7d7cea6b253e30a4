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

#include "sparseldr/tuple_index.hpp"

#include <bit>
#include <cstring>
#include <string>
#include <unordered_map>

#include "sparseldr/active_set.hpp"
#include "sparseldr/error.hpp"

namespace sparseldr {

ActiveSet ActiveSet::full(int horizon, int n) {
  ActiveSet set(horizon, n);
  for (int t = 1; t <= horizon; ++t) {
    for (int s = 1; s <= t; ++s) {
      for (int j = 1; j <= n; ++j) set.members_.insert({t, s, j});
    }
  }
  return set;
}

bool ActiveSet::insert(const Triple& key) {
  if (key.s < 1 || key.s > key.t || key.t > horizon_ || key.j < 1 ||
      key.j > n_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "active triple (" + std::to_string(key.t) + "," +
                    std::to_string(key.s) + "," + std::to_string(key.j) +
                    ") outside dimensions");
  }
  return members_.insert(key).second;
}

std::uint64_t ActiveSet::fingerprint() const {
  std::uint64_t h = 0x84222325CBF29CE4ULL ^ members_.size();
  TripleHash hasher;
  for (const Triple& key : members_) {
    h ^= hasher(key) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::int64_t triple_count(int horizon, int n) {
  return static_cast<std::int64_t>(n) * horizon * (horizon + 1) / 2;
}

std::int64_t TupleIndex::total() const {
  std::int64_t k = 0;
  for (const auto& g : groups) k += static_cast<std::int64_t>(g.size());
  return k;
}

std::int64_t tuple_count_bound(std::int64_t active_size, std::int64_t T,
                               std::int64_t E) {
  return 4 * active_size + E * T + 5 * T + E + 1;
}

namespace {

// Restricted tuples of every row for every period, visited row by row.
template <typename Visit>
void ForEachRowTuple(const ROInstance& instance, const ActiveSet& active,
                     Visit visit) {
  const int H = instance.horizon();
  const int n = instance.n();
  if (active.horizon() != H || active.n() != n) {
    if (!active.empty() || active.horizon() != 0) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "active set dimensions do not match the instance");
    }
  }
  // Active periods per (t, j).
  std::vector<std::vector<int>> periods(static_cast<std::size_t>(H) * n);
  for (const Triple& key : active) {
    periods[static_cast<std::size_t>(key.t - 1) * n + (key.j - 1)].push_back(key.s);
  }
  std::vector<PeriodTuple> tuples(H);
  for (int i = 0; i <= instance.m(); ++i) {
    for (PeriodTuple& p : tuples) {
      p.b = 0.0;
      p.a.clear();
    }
    const Row& row = instance.row(i);
    for (const UncertaintyCoef& e : row.b) tuples[e.s - 1].b = e.value;
    for (const DecisionCoef& e : row.a) {
      for (int s : periods[static_cast<std::size_t>(e.t - 1) * n + (e.j - 1)]) {
        tuples[s - 1].a.push_back(e);
      }
    }
    visit(i, tuples);
  }
}

void AppendBits(std::string& key, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  key.append(reinterpret_cast<const char*>(&bits), sizeof(bits));
}

void AppendInt(std::string& key, int v) {
  key.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

}  // namespace

TupleIndex dedup_tuples(const ROInstance& instance, const ActiveSet& active) {
  const int H = instance.horizon();
  TupleIndex idx;
  idx.horizon = H;
  idx.num_rows = instance.m() + 1;
  idx.pi.assign(H, std::vector<int>(idx.num_rows, -1));
  idx.groups.assign(H, {});
  idx.active_fingerprint = active.fingerprint();
  idx.active_size = active.size();
  idx.merged = true;
  std::vector<std::unordered_map<std::string, int>> lookup(H);
  std::string key;
  ForEachRowTuple(instance, active, [&](int i, std::vector<PeriodTuple>& tuples) {
    for (int s = 1; s <= H; ++s) {
      const PeriodTuple& tuple = tuples[s - 1];
      key.clear();
      AppendBits(key, tuple.b);
      for (const DecisionCoef& e : tuple.a) {
        AppendInt(key, e.t);
        AppendInt(key, e.j);
        AppendBits(key, e.value);
      }
      auto [it, inserted] = lookup[s - 1].try_emplace(
          key, static_cast<int>(idx.groups[s - 1].size()));
      if (inserted) idx.groups[s - 1].push_back(tuple);
      idx.pi[s - 1][i] = it->second;
    }
  });
  return idx;
}

TupleIndex identity_tuples(const ROInstance& instance, const ActiveSet& active) {
  const int H = instance.horizon();
  TupleIndex idx;
  idx.horizon = H;
  idx.num_rows = instance.m() + 1;
  idx.pi.assign(H, std::vector<int>(idx.num_rows, -1));
  idx.groups.assign(H, {});
  idx.active_fingerprint = active.fingerprint();
  idx.active_size = active.size();
  idx.merged = false;
  ForEachRowTuple(instance, active, [&](int i, std::vector<PeriodTuple>& tuples) {
    for (int s = 1; s <= H; ++s) {
      idx.pi[s - 1][i] = i;
      idx.groups[s - 1].push_back(tuples[s - 1]);
    }
  });
  return idx;
}

}  // namespace sparseldr
