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

#ifndef SPARSELDR_TESTS_RESIDUAL_ORACLE_HPP_
#define SPARSELDR_TESTS_RESIDUAL_ORACLE_HPP_

#include <vector>

#include "sparseldr/active_set_method.hpp"
#include "sparseldr/formulations.hpp"
#include "sparseldr/instance.hpp"
#include "sparseldr/lp_model.hpp"
#include "sparseldr/lp_solver.hpp"
#include "sparseldr/tuple_index.hpp"

namespace sparseldr::testing {

// Optimality residual of every inactive triple straight from the sum over
// rows: r = sum_i a_{i,t,j} (lam_i / sum_{i' in group} lam_i') zeta_group.
inline ResidualMap DirectResiduals(const ROInstance& inst, const ActiveSet& active,
                                   const TupleIndex& idx, const LPModel& dual,
                                   const LPSolution& sol) {
  const int m = inst.m();
  std::vector<double> lam(m + 1);
  for (int i = 0; i <= m; ++i) lam[i] = sol.primal[*dual.find_column(lam_name(i))];
  ResidualMap out;
  for (int t = 1; t <= inst.horizon(); ++t) {
    for (int s = 1; s <= t; ++s) {
      for (int j = 1; j <= inst.n(); ++j) {
        if (active.contains({t, s, j})) continue;
        double r = 0.0;
        for (int i = 0; i <= m; ++i) {
          const double a = inst.a(i, t, j);
          if (a == 0.0 || lam[i] == 0.0) continue;
          const int k = idx.pi[s - 1][i];
          double group = 0.0;
          for (int l = 0; l <= m; ++l) {
            if (idx.pi[s - 1][l] == k) group += lam[l];
          }
          if (group == 0.0) continue;
          auto col = dual.find_column(zeta_name(s, k));
          const double zeta = col ? sol.primal[*col] : inst.box().lower(s) * group;
          r += a * (lam[i] / group) * zeta;
        }
        out[{t, s, j}] = r;
      }
    }
  }
  return out;
}

}  // namespace sparseldr::testing

#endif  // SPARSELDR_TESTS_RESIDUAL_ORACLE_HPP_
