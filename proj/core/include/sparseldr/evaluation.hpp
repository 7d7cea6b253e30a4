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

#ifndef SPARSELDR_EVALUATION_HPP_
#define SPARSELDR_EVALUATION_HPP_

#include <cstdint>
#include <vector>

#include "sparseldr/instance.hpp"

namespace sparseldr {

struct WorstCaseReport {
  std::vector<double> value;  // worst-case row value, i = 0..m
  std::vector<double> violation;  // value - c_i, 0 for the objective row
  bool feasible = true;
  double objective = 0.0;
  double max_violation = 0.0;
  int worst_row = -1;
};

// Worst case of row i over the box, using the per-stage separable closed form.
double worst_case_row_value(const ROInstance& instance,
                            const LinearDecisionRule& ldr, int i);

inline constexpr int kMaxBruteForceStages = 20;

// Enumerates all 2^(H-1) box corners. Test oracle.
double brute_force_worst_case(const ROInstance& instance,
                              const LinearDecisionRule& ldr, int i);

WorstCaseReport check_feasibility(const ROInstance& instance,
                                  const LinearDecisionRule& ldr, double tol);

inline constexpr double kDefaultZeroTol = 1e-9;

// Entries with |y| > zero_tol * max(1, max |y|). c0 is not counted.
std::int64_t count_nonzeros(const LinearDecisionRule& ldr,
                            double zero_tol = kDefaultZeroTol);

// Same count restricted to stages t <= max_stage and decision j (0 = any).
std::int64_t count_nonzeros(const LinearDecisionRule& ldr, double zero_tol,
                            int max_stage, int decision);

}  // namespace sparseldr

#endif  // SPARSELDR_EVALUATION_HPP_
