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

#ifndef SPARSELDR_LP_MODEL_HPP_
#define SPARSELDR_LP_MODEL_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sparseldr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { kMinimize, kMaximize };
enum class RowSense { kLessEqual, kEqual };

struct ModelSize {
  std::int64_t columns = 0;
  std::int64_t rows = 0;
  std::int64_t nonzeros = 0;
  bool operator==(const ModelSize&) const = default;
};

// Sparse LP with named columns and rows. Rows are stored row-wise; each row
// is either a <= or an = constraint.
class LPModel {
 public:
  explicit LPModel(ObjectiveSense sense = ObjectiveSense::kMinimize);

  int add_column(std::string name, double lower, double upper, double cost);
  // Duplicate column references within one row are summed; exact zeros are
  // dropped.
  int add_row(std::string name, RowSense sense, double rhs,
              std::vector<std::pair<int, double>> entries);

  ObjectiveSense sense() const { return sense_; }
  int num_columns() const { return static_cast<int>(col_names_.size()); }
  int num_rows() const { return static_cast<int>(row_names_.size()); }
  std::int64_t num_nonzeros() const {
    return static_cast<std::int64_t>(entry_col_.size());
  }

  const std::string& column_name(int j) const { return col_names_[j]; }
  double column_lower(int j) const { return col_lower_[j]; }
  double column_upper(int j) const { return col_upper_[j]; }
  double column_cost(int j) const { return col_cost_[j]; }
  const std::vector<double>& column_lowers() const { return col_lower_; }
  const std::vector<double>& column_uppers() const { return col_upper_; }
  const std::vector<double>& column_costs() const { return col_cost_; }

  const std::string& row_name(int i) const { return row_names_[i]; }
  RowSense row_sense(int i) const { return row_sense_[i]; }
  double row_rhs(int i) const { return row_rhs_[i]; }
  std::span<const int> row_columns(int i) const {
    return {entry_col_.data() + row_start_[i],
            entry_col_.data() + row_start_[i + 1]};
  }
  std::span<const double> row_values(int i) const {
    return {entry_val_.data() + row_start_[i],
            entry_val_.data() + row_start_[i + 1]};
  }

  std::optional<int> find_column(const std::string& name) const;
  std::optional<int> find_row(const std::string& name) const;

  // Objective value of a primal point, in the model's own sense.
  double objective_value(std::span<const double> x) const;
  // Largest bound or row violation of a primal point.
  double max_primal_violation(std::span<const double> x) const;

 private:
  ObjectiveSense sense_;
  std::vector<std::string> col_names_;
  std::vector<double> col_lower_;
  std::vector<double> col_upper_;
  std::vector<double> col_cost_;
  std::vector<std::string> row_names_;
  std::vector<RowSense> row_sense_;
  std::vector<double> row_rhs_;
  std::vector<std::int64_t> row_start_{0};
  std::vector<int> entry_col_;
  std::vector<double> entry_val_;
  std::unordered_map<std::string, int> col_index_;
  std::unordered_map<std::string, int> row_index_;
};

ModelSize model_size(const LPModel& model);

}  // namespace sparseldr

#endif  // SPARSELDR_LP_MODEL_HPP_
