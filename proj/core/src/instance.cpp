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

#include "sparseldr/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparseldr/error.hpp"

namespace sparseldr {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kHorizonTooLarge: return "horizon-too-large";
    case ErrorCode::kStaleIndex: return "stale-index";
    case ErrorCode::kNameCollision: return "name-collision";
    case ErrorCode::kMissingName: return "missing-name";
    case ErrorCode::kNotOptimal: return "not-optimal";
    case ErrorCode::kEmptyCandidates: return "empty-candidate-set";
    case ErrorCode::kSolverFailure: return "solver-failure";
    case ErrorCode::kParse: return "parse-error";
  }
  return "unknown";
}

BoxUncertainty::BoxUncertainty(std::vector<double> lower,
                               std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "box bounds must be nonempty and of equal length");
  }
  if (lower_[0] != 1.0 || upper_[0] != 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "the first stage of the box must be [1, 1]");
  }
  for (std::size_t s = 1; s < lower_.size(); ++s) {
    if (!std::isfinite(lower_[s]) || !std::isfinite(upper_[s]) ||
        !(lower_[s] < upper_[s])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "box stage " + std::to_string(s + 1) +
                      " needs finite lower < upper");
    }
  }
}

const char* ToString(RowLabel label) {
  switch (label) {
    case RowLabel::kObjective: return "objective";
    case RowLabel::kCapacity: return "capacity";
    case RowLabel::kBoundUpper: return "bound-ub";
    case RowLabel::kBoundLower: return "bound-lb";
    case RowLabel::kInventoryUpper: return "inventory-ub";
    case RowLabel::kInventoryLower: return "inventory-lb";
    case RowLabel::kGeneric: return "generic";
  }
  return "generic";
}

std::optional<RowLabel> ParseRowLabel(const std::string& text) {
  for (RowLabel l : {RowLabel::kObjective, RowLabel::kCapacity,
                     RowLabel::kBoundUpper, RowLabel::kBoundLower,
                     RowLabel::kInventoryUpper, RowLabel::kInventoryLower,
                     RowLabel::kGeneric}) {
    if (text == ToString(l)) return l;
  }
  return std::nullopt;
}

void normalize_row(Row& row) {
  std::sort(row.a.begin(), row.a.end(),
            [](const DecisionCoef& x, const DecisionCoef& y) {
              return x.t != y.t ? x.t < y.t : x.j < y.j;
            });
  std::vector<DecisionCoef> a;
  a.reserve(row.a.size());
  for (const DecisionCoef& e : row.a) {
    if (!a.empty() && a.back().t == e.t && a.back().j == e.j) {
      a.back().value += e.value;
    } else {
      a.push_back(e);
    }
  }
  std::erase_if(a, [](const DecisionCoef& e) { return e.value == 0.0; });
  row.a = std::move(a);

  std::sort(row.b.begin(), row.b.end(),
            [](const UncertaintyCoef& x, const UncertaintyCoef& y) {
              return x.s < y.s;
            });
  std::vector<UncertaintyCoef> b;
  b.reserve(row.b.size());
  for (const UncertaintyCoef& e : row.b) {
    if (!b.empty() && b.back().s == e.s) {
      b.back().value += e.value;
    } else {
      b.push_back(e);
    }
  }
  std::erase_if(b, [](const UncertaintyCoef& e) { return e.value == 0.0; });
  row.b = std::move(b);
}

ROInstance::ROInstance(int horizon, int n, BoxUncertainty box,
                       std::vector<Row> rows, InstanceMeta meta)
    : horizon_(horizon),
      n_(n),
      box_(std::move(box)),
      rows_(std::move(rows)),
      meta_(std::move(meta)) {
  if (horizon_ < 1 || n_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "horizon and n must be >= 1");
  }
  if (box_.horizon() != horizon_) {
    throw Error(ErrorCode::kInvalidArgument,
                "box horizon does not match instance horizon");
  }
  if (rows_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "missing objective row 0");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Row& row = rows_[i];
    normalize_row(row);
    for (const DecisionCoef& e : row.a) {
      if (e.t < 1 || e.t > horizon_ || e.j < 1 || e.j > n_) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "row " + std::to_string(i) + ": decision index (" +
                        std::to_string(e.t) + "," + std::to_string(e.j) +
                        ") out of range");
      }
      if (!std::isfinite(e.value)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "row " + std::to_string(i) + ": non-finite coefficient");
      }
    }
    for (const UncertaintyCoef& e : row.b) {
      if (e.s < 1 || e.s > horizon_) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "row " + std::to_string(i) + ": stage " +
                        std::to_string(e.s) + " out of range");
      }
      if (!std::isfinite(e.value)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "row " + std::to_string(i) + ": non-finite coefficient");
      }
    }
    if (i == 0) {
      row.c = 0.0;
    } else if (!std::isfinite(row.c)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + ": non-finite right-hand side");
    }
  }
}

double ROInstance::a(int i, int t, int j) const {
  const auto& a = rows_.at(i).a;
  auto it = std::lower_bound(a.begin(), a.end(), DecisionCoef{t, j, 0.0},
                             [](const DecisionCoef& x, const DecisionCoef& y) {
                               return x.t != y.t ? x.t < y.t : x.j < y.j;
                             });
  return (it != a.end() && it->t == t && it->j == j) ? it->value : 0.0;
}

double ROInstance::b(int i, int s) const {
  const auto& b = rows_.at(i).b;
  auto it = std::lower_bound(
      b.begin(), b.end(), s,
      [](const UncertaintyCoef& x, int key) { return x.s < key; });
  return (it != b.end() && it->s == s) ? it->value : 0.0;
}

std::int64_t ROInstance::decision_nonzeros() const {
  std::int64_t total = 0;
  for (const Row& row : rows_) total += static_cast<std::int64_t>(row.a.size());
  return total;
}

void LinearDecisionRule::set(const Triple& key, double value) {
  if (key.s < 1 || key.s > key.t || key.j < 1) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "decision rule entry needs 1 <= s <= t and j >= 1");
  }
  entries_[key] = value;
}

double LinearDecisionRule::get(const Triple& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second;
}

}  // namespace sparseldr
