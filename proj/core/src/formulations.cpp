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

#include "sparseldr/formulations.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sparseldr/error.hpp"

namespace sparseldr {
namespace {

std::string Bracket(const char* prefix, std::initializer_list<int> parts) {
  std::string out = prefix;
  out += '[';
  bool first = true;
  for (int p : parts) {
    if (!first) out += ',';
    out += std::to_string(p);
    first = false;
  }
  out += ']';
  return out;
}

void CheckIndex(const ROInstance& instance, const ActiveSet& active,
                const TupleIndex& idx) {
  if (idx.horizon != instance.horizon() || idx.num_rows != instance.m() + 1 ||
      idx.active_size != active.size() ||
      idx.active_fingerprint != active.fingerprint()) {
    throw Error(ErrorCode::kStaleIndex,
                "tuple index was not built from this instance and active set");
  }
}

// members[s-1][k]: rows of group k at period s.
std::vector<std::vector<std::vector<int>>> GroupMembers(const TupleIndex& idx) {
  std::vector<std::vector<std::vector<int>>> members(idx.horizon);
  for (int s = 1; s <= idx.horizon; ++s) {
    members[s - 1].resize(idx.groups[s - 1].size());
    for (int i = 0; i < idx.num_rows; ++i) {
      members[s - 1][idx.pi[s - 1][i]].push_back(i);
    }
  }
  return members;
}

}  // namespace

std::string y_name(const Triple& key) { return Bracket("y", {key.t, key.s, key.j}); }
std::string eq_name(const Triple& key) { return Bracket("eq", {key.t, key.s, key.j}); }
std::string lam_name(int i) { return Bracket("lam", {i}); }
std::string cons_name(int i) { return Bracket("cons", {i}); }
std::string zeta_name(int s, int k) { return Bracket("zeta", {s, k}); }
std::string wub_name(int s, int k) { return Bracket("wub", {s, k}); }
std::string wlb_name(int s, int k) { return Bracket("wlb", {s, k}); }
std::string zub_name(int s, int k) { return Bracket("zub", {s, k}); }
std::string zlb_name(int s, int k) { return Bracket("zlb", {s, k}); }
std::string grp_name(int s, int k) { return Bracket("grp", {s, k}); }

LPModel build_P_A(const ROInstance& instance, const ActiveSet& active,
                  const TupleIndex& idx) {
  CheckIndex(instance, active, idx);
  const int H = instance.horizon();
  const int m = instance.m();
  const BoxUncertainty& box = instance.box();
  LPModel model(ObjectiveSense::kMinimize);
  const int c0 = model.add_column(kEpigraphColumn, -kInfinity, kInfinity, 1.0);
  std::map<Triple, int> y_col;
  for (const Triple& key : active) {
    y_col[key] = model.add_column(y_name(key), -kInfinity, kInfinity, 0.0);
  }
  // wub/wlb columns per (s, k); wub of group k at period s sits at
  // w_first[s-1] + 2k, wlb right after.
  std::vector<int> w_first(H);
  for (int s = 1; s <= H; ++s) {
    w_first[s - 1] = model.num_columns();
    for (int k = 0; k < idx.count(s); ++k) {
      model.add_column(wub_name(s, k), 0.0, kInfinity, 0.0);
      model.add_column(wlb_name(s, k), 0.0, kInfinity, 0.0);
    }
  }
  std::vector<std::pair<int, double>> entries;
  for (int i = 0; i <= m; ++i) {
    entries.clear();
    for (int s = 1; s <= H; ++s) {
      const int k = idx.pi[s - 1][i];
      entries.emplace_back(w_first[s - 1] + 2 * k, box.upper(s));
      entries.emplace_back(w_first[s - 1] + 2 * k + 1, -box.lower(s));
    }
    if (i == 0) entries.emplace_back(c0, -1.0);
    model.add_row(cons_name(i), RowSense::kLessEqual, i == 0 ? 0.0 : instance.c(i),
                  entries);
  }
  for (int s = 1; s <= H; ++s) {
    for (int k = 0; k < idx.count(s); ++k) {
      const PeriodTuple& tuple = idx.groups[s - 1][k];
      entries.clear();
      entries.emplace_back(w_first[s - 1] + 2 * k, 1.0);
      entries.emplace_back(w_first[s - 1] + 2 * k + 1, -1.0);
      for (const DecisionCoef& e : tuple.a) {
        entries.emplace_back(y_col.at({e.t, s, e.j}), -e.value);
      }
      model.add_row(grp_name(s, k), RowSense::kEqual, -tuple.b, entries);
    }
  }
  return model;
}

LPModel build_rc_primal_full(const ROInstance& instance) {
  const ActiveSet full = ActiveSet::full(instance.horizon(), instance.n());
  return build_P_A(instance, full, identity_tuples(instance, full));
}

ModelSize rc_primal_size(const ROInstance& instance) {
  const std::int64_t H = instance.horizon();
  const std::int64_t rows = instance.m() + 1;
  const BoxUncertainty& box = instance.box();
  std::int64_t box_nonzeros = 0;
  for (int s = 1; s <= H; ++s) {
    box_nonzeros += (box.upper(s) != 0.0) + (box.lower(s) != 0.0);
  }
  std::int64_t weighted = 0;
  for (const Row& row : instance.rows()) {
    for (const DecisionCoef& e : row.a) weighted += e.t;
  }
  ModelSize size;
  size.columns = 1 + triple_count(instance.horizon(), instance.n()) + 2 * rows * H;
  size.rows = rows + rows * H;
  size.nonzeros = 1 + rows * box_nonzeros + 2 * rows * H + weighted;
  return size;
}

LPModel build_D_A(const ROInstance& instance, const ActiveSet& active,
                  const TupleIndex& idx, const DualBuildOptions& options) {
  CheckIndex(instance, active, idx);
  if (options.multiplier_bound && !(*options.multiplier_bound > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "multiplier bound must be > 0");
  }
  const int H = instance.horizon();
  const int m = instance.m();
  const BoxUncertainty& box = instance.box();
  const double lam_upper = options.multiplier_bound.value_or(kInfinity);
  LPModel model(ObjectiveSense::kMaximize);
  for (int i = 0; i <= m; ++i) {
    if (i == 0) {
      model.add_column(lam_name(0), 1.0, 1.0, 0.0);
    } else {
      model.add_column(lam_name(i), 0.0, lam_upper, -instance.c(i));
    }
  }
  std::vector<std::vector<int>> zeta_col(H);
  for (int s = 1; s <= H; ++s) {
    zeta_col[s - 1].assign(idx.count(s), -1);
    for (int k = 0; k < idx.count(s); ++k) {
      const PeriodTuple& tuple = idx.groups[s - 1][k];
      if (options.remove_zero_groups && tuple.is_zero()) continue;
      zeta_col[s - 1][k] =
          model.add_column(zeta_name(s, k), -kInfinity, kInfinity, -tuple.b);
    }
  }
  std::map<Triple, std::vector<std::pair<int, double>>> eq_entries;
  for (const Triple& key : active) eq_entries[key];
  for (int s = 1; s <= H; ++s) {
    for (int k = 0; k < idx.count(s); ++k) {
      const int col = zeta_col[s - 1][k];
      if (col < 0) continue;
      for (const DecisionCoef& e : idx.groups[s - 1][k].a) {
        eq_entries[{e.t, s, e.j}].emplace_back(col, e.value);
      }
    }
  }
  for (auto& [key, entries] : eq_entries) {
    model.add_row(eq_name(key), RowSense::kEqual, 0.0, std::move(entries));
  }
  const auto members = GroupMembers(idx);
  std::vector<std::pair<int, double>> entries;
  for (int s = 1; s <= H; ++s) {
    for (int k = 0; k < idx.count(s); ++k) {
      const int col = zeta_col[s - 1][k];
      if (col < 0) continue;
      entries.clear();
      entries.emplace_back(col, 1.0);
      for (int i : members[s - 1][k]) entries.emplace_back(i, -box.upper(s));
      model.add_row(zub_name(s, k), RowSense::kLessEqual, 0.0, entries);
      entries.clear();
      entries.emplace_back(col, -1.0);
      for (int i : members[s - 1][k]) entries.emplace_back(i, box.lower(s));
      model.add_row(zlb_name(s, k), RowSense::kLessEqual, 0.0, entries);
    }
  }
  return model;
}

LPModel build_rc_dual(const ROInstance& instance) {
  const ActiveSet full = ActiveSet::full(instance.horizon(), instance.n());
  DualBuildOptions options;
  options.remove_zero_groups = false;
  return build_D_A(instance, full, identity_tuples(instance, full), options);
}

LinearDecisionRule ldr_from_primal(const LPModel& primal_model,
                                   const std::vector<double>& primal,
                                   const ActiveSet& active) {
  if (primal.size() != static_cast<std::size_t>(primal_model.num_columns())) {
    throw Error(ErrorCode::kInvalidArgument, "primal vector size mismatch");
  }
  LinearDecisionRule ldr;
  for (const Triple& key : active) {
    auto col = primal_model.find_column(y_name(key));
    if (!col) throw Error(ErrorCode::kMissingName, "missing column " + y_name(key));
    ldr.set(key, primal[*col]);
  }
  auto c0 = primal_model.find_column(kEpigraphColumn);
  if (!c0) throw Error(ErrorCode::kMissingName, "missing column c0");
  ldr.c0 = primal[*c0];
  return ldr;
}

}  // namespace sparseldr
