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

#ifndef SPARSELDR_FORMULATIONS_HPP_
#define SPARSELDR_FORMULATIONS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sparseldr/active_set.hpp"
#include "sparseldr/instance.hpp"
#include "sparseldr/lp_model.hpp"
#include "sparseldr/tuple_index.hpp"

namespace sparseldr {

// Column and row names shared by all builders.
std::string y_name(const Triple& key);
std::string eq_name(const Triple& key);
std::string lam_name(int i);
std::string cons_name(int i);
std::string zeta_name(int s, int k);
std::string wub_name(int s, int k);
std::string wlb_name(int s, int k);
std::string zub_name(int s, int k);
std::string zlb_name(int s, int k);
std::string grp_name(int s, int k);
inline constexpr const char* kEpigraphColumn = "c0";

// Robust counterpart over all rule coefficients: min c0 over y and the
// per-(row, period) split variables wub/wlb >= 0.
LPModel build_rc_primal_full(const ROInstance& instance);

// Size of build_rc_primal_full computed without building the model.
ModelSize rc_primal_size(const ROInstance& instance);

// Compact primal over the active set with one wub/wlb pair per tuple group:
// 1 + |A| + 2K columns and 1 + m + K rows.
LPModel build_P_A(const ROInstance& instance, const ActiveSet& active,
                  const TupleIndex& idx);

struct DualBuildOptions {
  // Upper bound on the row multipliers lam[1..m]; unbounded when absent.
  std::optional<double> multiplier_bound;
  // Drop the zeta bound rows (and the then-empty zeta column) of groups
  // whose tuple is identically zero.
  bool remove_zero_groups = true;
};

// Dual of build_P_A (maximization).
LPModel build_D_A(const ROInstance& instance, const ActiveSet& active,
                  const TupleIndex& idx, const DualBuildOptions& options = {});

// Dual robust counterpart: lam per row, zeta per (row, period), equality per
// rule coefficient; no group merging or removal.
LPModel build_rc_dual(const ROInstance& instance);

// Reads y[t,s,j] for every member of `active` and c0 from a primal model
// (build_P_A or build_rc_primal_full) solution.
LinearDecisionRule ldr_from_primal(const LPModel& primal_model,
                                   const std::vector<double>& primal,
                                   const ActiveSet& active);

}  // namespace sparseldr

#endif  // SPARSELDR_FORMULATIONS_HPP_
