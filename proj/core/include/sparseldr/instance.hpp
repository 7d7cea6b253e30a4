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

#ifndef SPARSELDR_INSTANCE_HPP_
#define SPARSELDR_INSTANCE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sparseldr {

// Index of one decision-rule coefficient: decision j of stage t responds to
// the uncertainty revealed in stage s. All indices are 1-based, s <= t.
struct Triple {
  int t = 0;
  int s = 0;
  int j = 0;
  auto operator<=>(const Triple&) const = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& x) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(x.t);
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(x.s);
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(x.j);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Per-stage interval uncertainty. Stage 1 is the constant component and is
// pinned to [1, 1].
class BoxUncertainty {
 public:
  BoxUncertainty() = default;
  BoxUncertainty(std::vector<double> lower, std::vector<double> upper);

  int horizon() const { return static_cast<int>(lower_.size()); }
  // s is 1-based.
  double lower(int s) const { return lower_[s - 1]; }
  double upper(int s) const { return upper_[s - 1]; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

enum class RowLabel {
  kObjective,
  kCapacity,
  kBoundUpper,
  kBoundLower,
  kInventoryUpper,
  kInventoryLower,
  kGeneric,
};

const char* ToString(RowLabel label);
std::optional<RowLabel> ParseRowLabel(const std::string& text);

struct DecisionCoef {
  int t = 0;
  int j = 0;
  double value = 0.0;
};

struct UncertaintyCoef {
  int s = 0;
  double value = 0.0;
};

// One row of the cost form: sum_t a_t . x_t(zeta) - sum_t b_t zeta_t <= c.
struct Row {
  std::vector<DecisionCoef> a;  // sorted by (t, j), unique, nonzero
  std::vector<UncertaintyCoef> b;  // sorted by s, unique, nonzero
  double c = 0.0;
  RowLabel label = RowLabel::kGeneric;
};

// Sorts, merges duplicates and drops exact zeros.
void normalize_row(Row& row);

struct InstanceMeta {
  std::string generator;
  int T = 0;
  int E = 0;
  // Generator parameters as a JSON document; "{}" when absent.
  std::string params_json = "{}";
};

// A multistage robust problem in cost form. Row 0 is the objective (its c is
// unused); rows 1..m are constraints.
class ROInstance {
 public:
  ROInstance() = default;
  ROInstance(int horizon, int n, BoxUncertainty box, std::vector<Row> rows,
             InstanceMeta meta = {});

  int horizon() const { return horizon_; }
  int n() const { return n_; }
  int m() const { return static_cast<int>(rows_.size()) - 1; }
  const BoxUncertainty& box() const { return box_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(int i) const { return rows_[i]; }
  const InstanceMeta& meta() const { return meta_; }

  double a(int i, int t, int j) const;
  double b(int i, int s) const;
  double c(int i) const { return rows_[i].c; }

  // Total stored decision coefficients over all rows.
  std::int64_t decision_nonzeros() const;

 private:
  int horizon_ = 0;
  int n_ = 0;
  BoxUncertainty box_;
  std::vector<Row> rows_;
  InstanceMeta meta_;
};

// Sparse affine policy x_{t,j}(zeta) = sum_{s<=t} y[t,s,j] zeta_s.
class LinearDecisionRule {
 public:
  void set(const Triple& key, double value);
  double get(const Triple& key) const;
  bool contains(const Triple& key) const { return entries_.count(key) > 0; }
  void erase(const Triple& key) { entries_.erase(key); }
  const std::map<Triple, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::optional<double> c0;

 private:
  std::map<Triple, double> entries_;
};

}  // namespace sparseldr

#endif  // SPARSELDR_INSTANCE_HPP_
