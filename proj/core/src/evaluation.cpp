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

#include "sparseldr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sparseldr/error.hpp"

namespace sparseldr {
namespace {

// Rule coefficients grouped by (t, j): list of (s, y).
class RuleIndex {
 public:
  RuleIndex(const ROInstance& instance, const LinearDecisionRule& ldr)
      : n_(instance.n()),
        slots_(static_cast<std::size_t>(instance.horizon()) * instance.n()) {
    for (const auto& [key, y] : ldr.entries()) {
      if (key.t > instance.horizon() || key.j > instance.n() || key.s < 1 ||
          key.s > key.t) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "decision rule entry (" + std::to_string(key.t) + "," +
                        std::to_string(key.s) + "," + std::to_string(key.j) +
                        ") outside instance dimensions");
      }
      if (y != 0.0) slots_[slot(key.t, key.j)].emplace_back(key.s, y);
    }
  }

  const std::vector<std::pair<int, double>>& at(int t, int j) const {
    return slots_[slot(t, j)];
  }

 private:
  std::size_t slot(int t, int j) const {
    return static_cast<std::size_t>(t - 1) * n_ + (j - 1);
  }
  int n_;
  std::vector<std::vector<std::pair<int, double>>> slots_;
};

double RowWorstCase(const ROInstance& instance, const RuleIndex& index, int i,
                    std::vector<double>& g) {
  const int H = instance.horizon();
  g.assign(H + 1, 0.0);
  const Row& row = instance.row(i);
  for (const UncertaintyCoef& e : row.b) g[e.s] -= e.value;
  for (const DecisionCoef& e : row.a) {
    for (const auto& [s, y] : index.at(e.t, e.j)) g[s] += e.value * y;
  }
  const BoxUncertainty& box = instance.box();
  double total = 0.0;
  for (int s = 1; s <= H; ++s) {
    total += std::max(g[s] * box.lower(s), g[s] * box.upper(s));
  }
  return total;
}

void CheckRow(const ROInstance& instance, int i) {
  if (i < 0 || i > instance.m()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "row index " + std::to_string(i) + " out of range");
  }
}

}  // namespace

double worst_case_row_value(const ROInstance& instance,
                            const LinearDecisionRule& ldr, int i) {
  CheckRow(instance, i);
  RuleIndex index(instance, ldr);
  std::vector<double> g;
  return RowWorstCase(instance, index, i, g);
}

double brute_force_worst_case(const ROInstance& instance,
                              const LinearDecisionRule& ldr, int i) {
  CheckRow(instance, i);
  const int H = instance.horizon();
  if (H - 1 > kMaxBruteForceStages) {
    throw Error(ErrorCode::kHorizonTooLarge,
                "corner enumeration limited to " +
                    std::to_string(kMaxBruteForceStages) + " uncertain stages");
  }
  for (const auto& [key, y] : ldr.entries()) {
    if (key.t > H || key.j > instance.n()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "decision rule entry outside instance dimensions");
    }
  }
  const Row& row = instance.row(i);
  const BoxUncertainty& box = instance.box();
  std::vector<double> zeta(H + 1, 1.0);
  double best = -HUGE_VAL;
  const std::uint64_t corners = std::uint64_t{1} << (H - 1);
  for (std::uint64_t mask = 0; mask < corners; ++mask) {
    for (int s = 2; s <= H; ++s) {
      zeta[s] = (mask >> (s - 2)) & 1 ? box.upper(s) : box.lower(s);
    }
    double value = 0.0;
    for (const DecisionCoef& e : row.a) {
      double x = 0.0;
      for (int s = 1; s <= e.t; ++s) x += ldr.get({e.t, s, e.j}) * zeta[s];
      value += e.value * x;
    }
    for (const UncertaintyCoef& e : row.b) value -= e.value * zeta[e.s];
    best = std::max(best, value);
  }
  return best;
}

WorstCaseReport check_feasibility(const ROInstance& instance,
                                  const LinearDecisionRule& ldr, double tol) {
  if (!(tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
  }
  RuleIndex index(instance, ldr);
  WorstCaseReport report;
  const int m = instance.m();
  report.value.resize(m + 1);
  report.violation.assign(m + 1, 0.0);
  std::vector<double> g;
  for (int i = 0; i <= m; ++i) {
    report.value[i] = RowWorstCase(instance, index, i, g);
    if (i == 0) continue;
    report.violation[i] = report.value[i] - instance.c(i);
    if (report.worst_row < 0 ||
        report.violation[i] > report.max_violation) {
      report.max_violation = report.violation[i];
      report.worst_row = i;
    }
    if (report.violation[i] > tol) report.feasible = false;
  }
  report.objective = report.value[0];
  return report;
}

std::int64_t count_nonzeros(const LinearDecisionRule& ldr, double zero_tol) {
  return count_nonzeros(ldr, zero_tol, 0, 0);
}

std::int64_t count_nonzeros(const LinearDecisionRule& ldr, double zero_tol,
                            int max_stage, int decision) {
  if (!(zero_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "zero_tol must be >= 0");
  }
  double max_abs = 0.0;
  for (const auto& [key, y] : ldr.entries()) {
    max_abs = std::max(max_abs, std::abs(y));
  }
  const double threshold = zero_tol * std::max(1.0, max_abs);
  std::int64_t count = 0;
  for (const auto& [key, y] : ldr.entries()) {
    if (max_stage > 0 && key.t > max_stage) continue;
    if (decision > 0 && key.j != decision) continue;
    if (std::abs(y) > threshold) ++count;
  }
  return count;
}

}  // namespace sparseldr
