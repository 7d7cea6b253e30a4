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

#include "sparseldr/lp_model.hpp"

#include <algorithm>
#include <cmath>

#include "sparseldr/error.hpp"

namespace sparseldr {

LPModel::LPModel(ObjectiveSense sense) : sense_(sense) {}

int LPModel::add_column(std::string name, double lower, double upper,
                        double cost) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInfinity || upper == -kInfinity) {
    throw Error(ErrorCode::kInvalidArgument,
                "column " + name + ": inconsistent bounds");
  }
  if (!std::isfinite(cost)) {
    throw Error(ErrorCode::kInvalidArgument,
                "column " + name + ": non-finite cost");
  }
  const int index = num_columns();
  if (!col_index_.emplace(name, index).second) {
    throw Error(ErrorCode::kNameCollision, "duplicate column name " + name);
  }
  col_names_.push_back(std::move(name));
  col_lower_.push_back(lower);
  col_upper_.push_back(upper);
  col_cost_.push_back(cost);
  return index;
}

int LPModel::add_row(std::string name, RowSense sense, double rhs,
                     std::vector<std::pair<int, double>> entries) {
  if (!std::isfinite(rhs)) {
    throw Error(ErrorCode::kInvalidArgument,
                "row " + name + ": non-finite right-hand side");
  }
  std::sort(entries.begin(), entries.end());
  std::vector<std::pair<int, double>> merged;
  std::size_t k = 0;
  while (k < entries.size()) {
    const int col = entries[k].first;
    if (col < 0 || col >= num_columns()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "row " + name + " references a missing column");
    }
    double value = 0.0;
    for (; k < entries.size() && entries[k].first == col; ++k) {
      value += entries[k].second;
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + name + ": non-finite coefficient");
    }
    if (value != 0.0) merged.emplace_back(col, value);
  }
  const int index = num_rows();
  if (!row_index_.emplace(name, index).second) {
    throw Error(ErrorCode::kNameCollision, "duplicate row name " + name);
  }
  for (const auto& [col, value] : merged) {
    entry_col_.push_back(col);
    entry_val_.push_back(value);
  }
  row_start_.push_back(static_cast<std::int64_t>(entry_col_.size()));
  row_names_.push_back(std::move(name));
  row_sense_.push_back(sense);
  row_rhs_.push_back(rhs);
  return index;
}

std::optional<int> LPModel::find_column(const std::string& name) const {
  auto it = col_index_.find(name);
  if (it == col_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LPModel::find_row(const std::string& name) const {
  auto it = row_index_.find(name);
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

double LPModel::objective_value(std::span<const double> x) const {
  double value = 0.0;
  for (int j = 0; j < num_columns(); ++j) value += col_cost_[j] * x[j];
  return value;
}

double LPModel::max_primal_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_columns(); ++j) {
    worst = std::max({worst, col_lower_[j] - x[j], x[j] - col_upper_[j]});
  }
  for (int i = 0; i < num_rows(); ++i) {
    double activity = 0.0;
    auto cols = row_columns(i);
    auto vals = row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) activity += vals[k] * x[cols[k]];
    const double excess = activity - row_rhs_[i];
    worst = std::max(worst, row_sense_[i] == RowSense::kEqual ? std::abs(excess)
                                                              : excess);
  }
  return worst;
}

ModelSize model_size(const LPModel& model) {
  return {model.num_columns(), model.num_rows(), model.num_nonzeros()};
}

}  // namespace sparseldr
