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

// Bounded-variable revised simplex. The model is brought to the form
//
//   min c'x  s.t.  A x - u = 0,  lo <= (x, u) <= up
//
// with one logical variable u_i per row. Variables 0..n-1 are structural,
// n..n+m-1 logical. The basis is kept as an LU factorization with
// product-form updates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "sparseldr/basis_factor.hpp"
#include "sparseldr/error.hpp"
#include "sparseldr/lp_solver.hpp"

namespace sparseldr {

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

constexpr double kInf = kInfinity;
constexpr double kPivotTol = 1e-9;
constexpr double kAuxFreeBound = 1000.0;
constexpr double kShiftLimit = 1e-5;
constexpr int kRefactorInterval = 100;

enum class State : std::uint8_t { kBasic, kLower, kUpper, kFree };

enum class Outcome { kOptimal, kUnbounded, kInfeasible, kIterationLimit };

class Simplex {
 public:
  Simplex(const LPModel& model, const SolverOptions& options);
  LPSolution Run();

 private:
  // Setup.
  void BuildMatrices();
  void ComputeScaling();
  void InitBounds();
  void SlackBasis();
  int CrashFreeColumns();

  // Basis maintenance.
  void Refactor();
  void ComputePrimal();
  void ComputeDuals();
  void Rebuild() {
    Refactor();
    ComputePrimal();
    ComputeDuals();
  }
  void LoadColumn(int j, IndexedVector& col) const;
  void PivotRow(int r);
  void ClearPivotRow();
  void ChangeBasis(int r, int q, State leaving_state);

  // Algorithms.
  Outcome DualPhase();
  bool DualPhaseOne();
  int PlaceForDual();
  void PerturbCosts();
  Outcome PrimalPhase();
  void PhaseOneDuals();
  bool MakeVertex();
  double PrimalInfeasibility() const;
  double DualInfeasibility() const;
  bool NonbasicAtBound(int j) const;
  void PlaceNonbasic(int j);
  bool NeedRefactor() const {
    return factor_.num_updates() >= kRefactorInterval ||
           factor_.eta_nonzeros() > factor_.factor_nonzeros() + m_;
  }
  bool IterationBudgetLeft() const { return iterations_ < options_.max_iters; }
  void Log(const char* phase);

  LPSolution Finish(Outcome outcome);

  const LPModel& model_;
  SolverOptions options_;
  int n_ = 0;
  int m_ = 0;
  int N_ = 0;

  std::vector<std::int64_t> cstart_;
  std::vector<int> cindex_;
  std::vector<double> cvalue_;
  std::vector<std::int64_t> rstart_;
  std::vector<int> rindex_;
  std::vector<double> rvalue_;
  std::vector<double> col_scale_;
  std::vector<double> row_scale_;

  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> cost_;
  std::vector<double> true_cost_;

  std::vector<double> x_;
  std::vector<double> d_;
  std::vector<State> state_;
  std::vector<int> head_;
  std::vector<int> pos_;
  BasisFactor factor_;

  // Dense duals, and the sparse pivot row and entering column.
  std::vector<double> pi_;
  IndexedVector rho_;
  IndexedVector alpha_col_;
  std::vector<double> alpha_row_;
  std::vector<int> row_touched_;
  std::vector<char> in_row_;
  std::vector<double> work_;

  // Dual steepest-edge weights by basis position.
  std::vector<double> dse_;
  IndexedVector tau_;
  struct Candidate {
    int j;
    double ratio;
    double abs_alpha;
    double slack;  // reduced cost distance to infeasibility
  };
  std::vector<Candidate> candidates_;
  std::vector<int> flips_;
  IndexedVector flip_col_;

  std::vector<std::int64_t> bstart_;
  std::vector<int> bindex_;
  std::vector<double> bvalue_;

  std::int64_t iterations_ = 0;
  std::vector<double> ray_;
  std::mt19937_64 rng_;
};

Simplex::Simplex(const LPModel& model, const SolverOptions& options)
    : model_(model), options_(options), rng_(options.seed) {
  n_ = model.num_columns();
  m_ = model.num_rows();
  N_ = n_ + m_;
}

void Simplex::BuildMatrices() {
  rstart_.assign(m_ + 1, 0);
  rindex_.clear();
  rvalue_.clear();
  rindex_.reserve(model_.num_nonzeros());
  rvalue_.reserve(model_.num_nonzeros());
  for (int i = 0; i < m_; ++i) {
    auto cols = model_.row_columns(i);
    auto vals = model_.row_values(i);
    rindex_.insert(rindex_.end(), cols.begin(), cols.end());
    rvalue_.insert(rvalue_.end(), vals.begin(), vals.end());
    rstart_[i + 1] = static_cast<std::int64_t>(rindex_.size());
  }
  cstart_.assign(n_ + 1, 0);
  for (int j : rindex_) ++cstart_[j + 1];
  for (int j = 0; j < n_; ++j) cstart_[j + 1] += cstart_[j];
  cindex_.resize(rindex_.size());
  cvalue_.resize(rindex_.size());
  std::vector<std::int64_t> fill(cstart_.begin(), cstart_.end() - 1);
  for (int i = 0; i < m_; ++i) {
    for (std::int64_t e = rstart_[i]; e < rstart_[i + 1]; ++e) {
      const std::int64_t slot = fill[rindex_[e]]++;
      cindex_[slot] = i;
      cvalue_[slot] = rvalue_[e];
    }
  }
}

void Simplex::ComputeScaling() {
  col_scale_.assign(n_, 1.0);
  row_scale_.assign(m_, 1.0);
  if (!options_.scale || rindex_.empty()) return;
  for (int pass = 0; pass < 6; ++pass) {
    for (int i = 0; i < m_; ++i) {
      double lo = kInf;
      double hi = 0.0;
      for (std::int64_t e = rstart_[i]; e < rstart_[i + 1]; ++e) {
        const double a = std::abs(rvalue_[e]) * col_scale_[rindex_[e]];
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0) row_scale_[i] = 1.0 / std::sqrt(lo * hi);
    }
    for (int j = 0; j < n_; ++j) {
      double lo = kInf;
      double hi = 0.0;
      for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
        const double a = std::abs(cvalue_[e]) * row_scale_[cindex_[e]];
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0) col_scale_[j] = 1.0 / std::sqrt(lo * hi);
    }
  }
  auto power_of_two = [](double s) { return std::exp2(std::round(std::log2(s))); };
  for (double& s : row_scale_) s = power_of_two(s);
  for (double& s : col_scale_) s = power_of_two(s);
  for (int i = 0; i < m_; ++i) {
    for (std::int64_t e = rstart_[i]; e < rstart_[i + 1]; ++e) {
      rvalue_[e] *= row_scale_[i] * col_scale_[rindex_[e]];
    }
  }
  for (int j = 0; j < n_; ++j) {
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
      cvalue_[e] *= row_scale_[cindex_[e]] * col_scale_[j];
    }
  }
}

void Simplex::InitBounds() {
  lo_.assign(N_, 0.0);
  up_.assign(N_, 0.0);
  cost_.assign(N_, 0.0);
  const double sign = model_.sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  for (int j = 0; j < n_; ++j) {
    const double s = col_scale_[j];
    lo_[j] = model_.column_lower(j) / s;
    up_[j] = model_.column_upper(j) / s;
    cost_[j] = sign * model_.column_cost(j) * s;
  }
  for (int i = 0; i < m_; ++i) {
    const double rhs = model_.row_rhs(i) * row_scale_[i];
    lo_[n_ + i] = model_.row_sense(i) == RowSense::kEqual ? rhs : -kInf;
    up_[n_ + i] = rhs;
  }
  true_cost_ = cost_;
}

void Simplex::PlaceNonbasic(int j) {
  const bool has_lo = lo_[j] > -kInf;
  const bool has_up = up_[j] < kInf;
  if (has_lo && has_up) {
    if (lo_[j] == up_[j] || cost_[j] >= 0.0) {
      state_[j] = State::kLower;
      x_[j] = lo_[j];
    } else {
      state_[j] = State::kUpper;
      x_[j] = up_[j];
    }
  } else if (has_lo) {
    state_[j] = State::kLower;
    x_[j] = lo_[j];
  } else if (has_up) {
    state_[j] = State::kUpper;
    x_[j] = up_[j];
  } else {
    state_[j] = State::kFree;
    x_[j] = 0.0;
  }
}

void Simplex::SlackBasis() {
  x_.assign(N_, 0.0);
  d_.assign(N_, 0.0);
  state_.assign(N_, State::kLower);
  head_.assign(m_, -1);
  pos_.assign(N_, -1);
  dse_.assign(m_, 1.0);
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j);
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    pos_[n_ + i] = i;
    state_[n_ + i] = State::kBasic;
  }
}

// Swaps free columns into the slack basis while keeping it triangular: a
// column pivots on a row none of the previously crashed columns touch.
int Simplex::CrashFreeColumns() {
  std::vector<char> touched(m_, 0);
  int crashed = 0;
  for (int j = 0; j < n_; ++j) {
    if (lo_[j] > -kInf || up_[j] < kInf) continue;
    double cmax = 0.0;
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
      cmax = std::max(cmax, std::abs(cvalue_[e]));
    }
    int r = -1;
    double best = 0.0;
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
      const int i = cindex_[e];
      const double a = std::abs(cvalue_[e]);
      if (touched[i] || a < 0.1 * cmax || a <= best) continue;
      r = i;
      best = a;
    }
    if (r < 0) continue;
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) touched[cindex_[e]] = 1;
    const int logical = n_ + r;
    state_[logical] = State::kLower;
    PlaceNonbasic(logical);
    pos_[logical] = -1;
    head_[r] = j;
    pos_[j] = r;
    state_[j] = State::kBasic;
    ++crashed;
  }
  return crashed;
}

void Simplex::LoadColumn(int j, IndexedVector& col) const {
  col.clear();
  if (j < n_) {
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
      col.set(cindex_[e], cvalue_[e]);
    }
  } else {
    col.set(j - n_, -1.0);
  }
}

void Simplex::Refactor() {
  if (options_.log_level > 1) {
    std::fprintf(stderr, "[simplex] refactor: factor nnz %lld, eta nnz %lld over %d updates\n",
                 static_cast<long long>(factor_.factor_nonzeros()),
                 static_cast<long long>(factor_.eta_nonzeros()), factor_.num_updates());
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    bstart_.assign(1, 0);
    bindex_.clear();
    bvalue_.clear();
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      if (j < n_) {
        for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
          bindex_.push_back(cindex_[e]);
          bvalue_.push_back(cvalue_[e]);
        }
      } else {
        bindex_.push_back(j - n_);
        bvalue_.push_back(-1.0);
      }
      bstart_.push_back(static_cast<std::int64_t>(bindex_.size()));
    }
    const int deficient = factor_.factorize(m_, bstart_, bindex_, bvalue_);
    if (deficient == 0) return;
    // Swap the dependent columns for logicals of the uncovered rows.
    const auto& positions = factor_.singular_positions();
    const auto& rows = factor_.unpivoted_rows();
    for (std::size_t k = 0; k < positions.size(); ++k) {
      const int p = positions[k];
      const int out = head_[p];
      const int in = n_ + rows[k];
      pos_[out] = -1;
      const bool at_lo = lo_[out] > -kInf &&
                         (up_[out] == kInf ||
                          std::abs(x_[out] - lo_[out]) <= std::abs(x_[out] - up_[out]));
      if (at_lo) {
        state_[out] = State::kLower;
        x_[out] = lo_[out];
      } else if (up_[out] < kInf) {
        state_[out] = State::kUpper;
        x_[out] = up_[out];
      } else {
        state_[out] = State::kFree;
      }
      head_[p] = in;
      pos_[in] = p;
      state_[in] = State::kBasic;
      dse_[p] = 1.0;
    }
  }
  throw Error(ErrorCode::kSolverFailure, "basis repair failed");
}

void Simplex::ComputePrimal() {
  work_.assign(m_, 0.0);
  for (int j = 0; j < N_; ++j) {
    if (state_[j] == State::kBasic || x_[j] == 0.0) continue;
    if (j < n_) {
      for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
        work_[cindex_[e]] -= cvalue_[e] * x_[j];
      }
    } else {
      work_[j - n_] += x_[j];
    }
  }
  factor_.ftran(work_);
  for (int p = 0; p < m_; ++p) x_[head_[p]] = work_[p];
}

void Simplex::ComputeDuals() {
  pi_.assign(m_, 0.0);
  for (int p = 0; p < m_; ++p) pi_[p] = cost_[head_[p]];
  factor_.btran(pi_);
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == State::kBasic) {
      d_[j] = 0.0;
      continue;
    }
    double dot = 0.0;
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
      dot += pi_[cindex_[e]] * cvalue_[e];
    }
    d_[j] = cost_[j] - dot;
  }
  for (int i = 0; i < m_; ++i) {
    const int j = n_ + i;
    d_[j] = state_[j] == State::kBasic ? 0.0 : cost_[j] + pi_[i];
  }
}

void Simplex::PivotRow(int r) {
  rho_.clear();
  rho_.set(r, 1.0);
  factor_.btran(rho_);
  const int nnz = static_cast<int>(rho_.index.size());
  auto touch = [this](int j, double v) {
    if (!in_row_[j]) {
      in_row_[j] = 1;
      row_touched_.push_back(j);
    }
    alpha_row_[j] += v;
  };
  if (nnz < m_ / 4) {
    for (int i : rho_.index) {
      const double ri = rho_.values[i];
      if (ri == 0.0) continue;
      for (std::int64_t e = rstart_[i]; e < rstart_[i + 1]; ++e) {
        const int j = rindex_[e];
        if (state_[j] != State::kBasic) touch(j, ri * rvalue_[e]);
      }
      if (state_[n_ + i] != State::kBasic) touch(n_ + i, -ri);
    }
  } else {
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == State::kBasic) continue;
      double dot = 0.0;
      for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
        dot += rho_.values[cindex_[e]] * cvalue_[e];
      }
      if (dot != 0.0) touch(j, dot);
    }
    for (int i = 0; i < m_; ++i) {
      const double ri = rho_.values[i];
      if (ri != 0.0 && state_[n_ + i] != State::kBasic) touch(n_ + i, -ri);
    }
  }
}

void Simplex::ClearPivotRow() {
  for (int j : row_touched_) {
    alpha_row_[j] = 0.0;
    in_row_[j] = 0;
  }
  row_touched_.clear();
}

void Simplex::ChangeBasis(int r, int q, State leaving_state) {
  const int leave = head_[r];
  state_[leave] = leaving_state;
  if (leaving_state == State::kLower) x_[leave] = lo_[leave];
  if (leaving_state == State::kUpper) x_[leave] = up_[leave];
  pos_[leave] = -1;
  head_[r] = q;
  pos_[q] = r;
  state_[q] = State::kBasic;
  d_[q] = 0.0;
  factor_.update(r, alpha_col_);
}

bool Simplex::NonbasicAtBound(int j) const {
  return x_[j] == lo_[j] || x_[j] == up_[j];
}

double Simplex::PrimalInfeasibility() const {
  double worst = 0.0;
  for (int p = 0; p < m_; ++p) {
    const int j = head_[p];
    worst = std::max({worst, lo_[j] - x_[j], x_[j] - up_[j]});
  }
  return worst;
}

double Simplex::DualInfeasibility() const {
  double worst = 0.0;
  for (int j = 0; j < N_; ++j) {
    switch (state_[j]) {
      case State::kBasic:
        break;
      case State::kLower:
        if (lo_[j] < up_[j]) worst = std::max(worst, -d_[j]);
        break;
      case State::kUpper:
        if (lo_[j] < up_[j]) worst = std::max(worst, d_[j]);
        break;
      case State::kFree:
        worst = std::max(worst, std::abs(d_[j]));
        break;
    }
  }
  return worst;
}

void Simplex::Log(const char* phase) {
  if (options_.log_level <= 0) return;
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) obj += true_cost_[j] * x_[j];
  std::fprintf(stderr, "[simplex] %-6s iter %8lld  obj %.10e  pinf %.2e  dinf %.2e\n",
               phase, static_cast<long long>(iterations_), obj,
               PrimalInfeasibility(), DualInfeasibility());
}

Outcome Simplex::DualPhase() {
  const double ptol = options_.feas_tol;
  const double dtol = options_.opt_tol;
  const bool steepest = options_.pivot_rule == PivotRule::kSteepestEdgeWithBlandFallback;
  const int degenerate_limit = 3 * std::max(m_, 1);
  int degenerate_run = 0;
  bool bland = false;
  int since_refactor = 0;
  int mismatch = 0;
  Rebuild();
  while (true) {
    if (!IterationBudgetLeft()) return Outcome::kIterationLimit;
    if (NeedRefactor()) {
      Rebuild();
      since_refactor = 0;
    }
    if (options_.log_level > 0 && iterations_ % 1000 == 0) Log("dual");

    // Leaving row.
    int r = -1;
    double best = 0.0;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      const double infeas = std::max(lo_[j] - x_[j], x_[j] - up_[j]);
      if (infeas <= ptol) continue;
      if (bland) {
        if (r < 0 || j < head_[r]) r = p;
        continue;
      }
      const double score = steepest ? infeas * infeas / dse_[p] : infeas;
      if (score > best) {
        best = score;
        r = p;
      }
    }
    if (r < 0) {
      if (since_refactor > 0) {
        // Confirm with fresh values before declaring optimality.
        Rebuild();
        since_refactor = 0;
        if (PrimalInfeasibility() > ptol) continue;
      }
      return Outcome::kOptimal;
    }
    const int leave = head_[r];
    const double s = x_[leave] < lo_[leave] ? 1.0 : -1.0;
    const double target = s > 0 ? lo_[leave] : up_[leave];

    PivotRow(r);
    candidates_.clear();
    for (int j : row_touched_) {
      if (lo_[j] == up_[j] && state_[j] != State::kFree) continue;
      const double a = alpha_row_[j];
      if (std::abs(a) <= kPivotTol) continue;
      const double v = s * a;
      double dj;
      if (state_[j] == State::kLower) {
        if (v >= 0) continue;
        dj = d_[j];
      } else if (state_[j] == State::kUpper) {
        if (v <= 0) continue;
        dj = -d_[j];
      } else {
        dj = std::abs(d_[j]);
      }
      dj = std::max(dj, 0.0);
      candidates_.push_back({j, dj / std::abs(a), std::abs(a), dj});
    }
    if (candidates_.empty()) {
      ClearPivotRow();
      return Outcome::kInfeasible;
    }
    std::sort(candidates_.begin(), candidates_.end(),
              [](const Candidate& x, const Candidate& y) {
                return x.ratio < y.ratio || (x.ratio == y.ratio && x.j < y.j);
              });

    // Bound-flipping Harris ratio test: whole groups of boxed candidates are
    // passed while the dual objective slope stays positive.
    double slope = std::abs(x_[leave] - target);
    flips_.clear();
    int q = -1;
    double t = 0.0;
    std::size_t begin = 0;
    while (begin < candidates_.size()) {
      double tmax = kInf;
      std::size_t end = begin;
      while (end < candidates_.size() && candidates_[end].ratio <= tmax) {
        const Candidate& c = candidates_[end];
        tmax = std::min(tmax, (c.slack + dtol) / c.abs_alpha);
        ++end;
      }
      double drop = 0.0;
      bool boxed = !bland;
      for (std::size_t k = begin; k < end && boxed; ++k) {
        const int j = candidates_[k].j;
        if (state_[j] == State::kFree || up_[j] - lo_[j] == kInf) {
          boxed = false;
        } else {
          drop += (up_[j] - lo_[j]) * candidates_[k].abs_alpha;
        }
      }
      if (boxed && slope - drop > ptol && end < candidates_.size()) {
        for (std::size_t k = begin; k < end; ++k) flips_.push_back(candidates_[k].j);
        slope -= drop;
        begin = end;
        continue;
      }
      double best_alpha = 0.0;
      for (std::size_t k = begin; k < end; ++k) {
        const Candidate& c = candidates_[k];
        const bool better = bland ? (q < 0 || c.j < q) : c.abs_alpha > best_alpha;
        if (better) {
          q = c.j;
          best_alpha = c.abs_alpha;
          t = c.ratio;
        }
      }
      // Remaining members of the group stay at their bounds.
      break;
    }
    if (q < 0) {
      ClearPivotRow();
      return Outcome::kInfeasible;
    }
    const double q_alpha = alpha_row_[q];

    LoadColumn(q, alpha_col_);
    factor_.ftran(alpha_col_);
    const double pivot = alpha_col_.values[r];
    if (std::abs(pivot - q_alpha) > 1e-7 * (1.0 + std::abs(pivot)) ||
        std::abs(pivot) <= kPivotTol) {
      ClearPivotRow();
      if (++mismatch > 5) {
        throw Error(ErrorCode::kSolverFailure, "unstable pivot in dual simplex");
      }
      Rebuild();
      since_refactor = 0;
      continue;
    }
    mismatch = 0;

    if (!flips_.empty()) {
      flip_col_.clear();
      for (int j : flips_) {
        const bool to_upper = state_[j] == State::kLower;
        const double delta = to_upper ? up_[j] - lo_[j] : lo_[j] - up_[j];
        x_[j] = to_upper ? up_[j] : lo_[j];
        state_[j] = to_upper ? State::kUpper : State::kLower;
        if (j < n_) {
          for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
            flip_col_.add(cindex_[e], cvalue_[e] * delta);
          }
        } else {
          flip_col_.add(j - n_, -delta);
        }
      }
      factor_.ftran(flip_col_);
      for (int p : flip_col_.index) x_[head_[p]] -= flip_col_.values[p];
    }

    if (steepest) {
      double weight = 0.0;
      tau_.clear();
      for (int i : rho_.index) {
        weight += rho_.values[i] * rho_.values[i];
        tau_.set(i, rho_.values[i]);
      }
      factor_.ftran(tau_);
      for (int p : alpha_col_.index) {
        if (p == r || alpha_col_.values[p] == 0.0) continue;
        const double ratio = alpha_col_.values[p] / pivot;
        dse_[p] = std::max(dse_[p] + ratio * (ratio * weight - 2.0 * tau_.values[p]),
                           ratio * ratio);
      }
      dse_[r] = std::max(weight / (pivot * pivot), 1e-12);
    }

    const double theta = (x_[leave] - target) / pivot;
    for (int p : alpha_col_.index) x_[head_[p]] -= theta * alpha_col_.values[p];
    x_[q] += theta;
    const double step = s * t;
    for (int j : row_touched_) d_[j] += step * alpha_row_[j];
    ClearPivotRow();
    ChangeBasis(r, q, s > 0 ? State::kLower : State::kUpper);
    d_[leave] = step;
    ++iterations_;
    ++since_refactor;

    if (t == 0.0) {
      if (++degenerate_run > degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

// Puts every nonbasic column at the bound its reduced cost calls for and
// returns the number of columns whose reduced cost has the wrong sign.
int Simplex::PlaceForDual() {
  const double dtol = options_.opt_tol;
  int infeasible = 0;
  for (int j = 0; j < N_; ++j) {
    if (state_[j] == State::kBasic) continue;
    const bool has_lo = lo_[j] > -kInf;
    const bool has_up = up_[j] < kInf;
    const double dj = d_[j];
    if (has_lo && has_up) {
      const bool at_lo = lo_[j] == up_[j] || dj >= 0.0;
      state_[j] = at_lo ? State::kLower : State::kUpper;
      x_[j] = at_lo ? lo_[j] : up_[j];
    } else if (has_lo) {
      state_[j] = State::kLower;
      x_[j] = lo_[j];
      if (dj < -dtol) ++infeasible;
    } else if (has_up) {
      state_[j] = State::kUpper;
      x_[j] = up_[j];
      if (dj > dtol) ++infeasible;
    } else {
      state_[j] = State::kFree;
      x_[j] = 0.0;
      if (std::abs(dj) > dtol) ++infeasible;
    }
  }
  return infeasible;
}

// Dual phase one on the auxiliary problem with the same costs and bounds
// [0,1] (lower bounded), [-1,0] (upper bounded), [-1000,1000] (free) and
// [0,0] (boxed). Its optimal basis is dual feasible for the original
// problem unless no such basis exists.
bool Simplex::DualPhaseOne() {
  const std::vector<double> lo = lo_;
  const std::vector<double> up = up_;
  for (int j = 0; j < N_; ++j) {
    const bool has_lo = lo[j] > -kInf;
    const bool has_up = up[j] < kInf;
    if (has_lo && has_up) {
      lo_[j] = up_[j] = 0.0;
    } else if (has_lo) {
      lo_[j] = 0.0;
      up_[j] = 1.0;
    } else if (has_up) {
      lo_[j] = -1.0;
      up_[j] = 0.0;
    } else {
      lo_[j] = -kAuxFreeBound;
      up_[j] = kAuxFreeBound;
    }
  }
  PlaceForDual();
  const Outcome outcome = DualPhase();
  Log("dual1");
  lo_ = lo;
  up_ = up;
  if (outcome != Outcome::kOptimal) {
    for (int j = 0; j < N_; ++j) {
      if (state_[j] != State::kBasic) PlaceNonbasic(j);
    }
    return false;
  }
  ComputeDuals();
  // Tolerance-level sign errors left by the Harris test are removed by
  // shifting costs; the true costs come back before the final cleanup.
  for (int j = 0; j < N_; ++j) {
    if (state_[j] == State::kBasic) continue;
    const double dj = d_[j];
    double shift = 0.0;
    const bool has_lo = lo_[j] > -kInf;
    const bool has_up = up_[j] < kInf;
    if (has_lo && has_up) continue;
    if (has_lo && dj < 0.0) shift = -dj;
    if (has_up && dj > 0.0) shift = -dj;
    if (!has_lo && !has_up) shift = -dj;
    if (shift != 0.0 && std::abs(shift) <= kShiftLimit) {
      cost_[j] += shift;
      d_[j] += shift;
    }
  }
  return PlaceForDual() == 0;
}

void Simplex::PerturbCosts() {
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int j = 0; j < N_; ++j) {
    const bool has_lo = lo_[j] > -kInf;
    const bool has_up = up_[j] < kInf;
    if (lo_[j] == up_[j] || (!has_lo && !has_up)) continue;
    const double xi = 1e-7 * (1.0 + std::abs(cost_[j])) * u(rng_);
    if (has_lo && has_up) {
      cost_[j] += cost_[j] >= 0.0 ? xi : -xi;
    } else if (has_lo) {
      cost_[j] += xi;
    } else {
      cost_[j] -= xi;
    }
  }
}

void Simplex::PhaseOneDuals() {
  pi_.assign(m_, 0.0);
  for (int p = 0; p < m_; ++p) {
    const int j = head_[p];
    if (x_[j] < lo_[j] - options_.feas_tol) {
      pi_[p] = -1.0;
    } else if (x_[j] > up_[j] + options_.feas_tol) {
      pi_[p] = 1.0;
    }
  }
  factor_.btran(pi_);
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == State::kBasic) {
      d_[j] = 0.0;
      continue;
    }
    double dot = 0.0;
    for (std::int64_t e = cstart_[j]; e < cstart_[j + 1]; ++e) {
      dot += pi_[cindex_[e]] * cvalue_[e];
    }
    d_[j] = -dot;
  }
  for (int i = 0; i < m_; ++i) {
    const int j = n_ + i;
    d_[j] = state_[j] == State::kBasic ? 0.0 : pi_[i];
  }
}

Outcome Simplex::PrimalPhase() {
  const double ptol = options_.feas_tol;
  const double dtol = options_.opt_tol;
  const int degenerate_limit = 3 * std::max(m_, 1);
  int degenerate_run = 0;
  bool bland = false;
  int mismatch = 0;
  bool phase_one = false;
  bool fresh = false;
  Refactor();
  ComputePrimal();
  while (true) {
    if (!IterationBudgetLeft()) return Outcome::kIterationLimit;
    if (NeedRefactor()) {
      Refactor();
      ComputePrimal();
      fresh = false;
    }
    const bool infeasible = PrimalInfeasibility() > ptol;
    if (infeasible) {
      PhaseOneDuals();
      phase_one = true;
    } else if (phase_one || !fresh) {
      ComputeDuals();
      phase_one = false;
      fresh = true;
    }
    if (options_.log_level > 0 && iterations_ % 1000 == 0) {
      Log(phase_one ? "primal1" : "primal2");
    }

    // Entering column: largest reduced cost of the right sign.
    int q = -1;
    double best = dtol;
    double dir = 0.0;
    for (int j = 0; j < N_; ++j) {
      const State st = state_[j];
      if (st == State::kBasic || lo_[j] == up_[j]) continue;
      double gain = 0.0;
      double dj_dir = 0.0;
      if ((st == State::kLower || st == State::kFree) && d_[j] < -dtol &&
          x_[j] < up_[j]) {
        gain = -d_[j];
        dj_dir = 1.0;
      } else if ((st == State::kUpper || st == State::kFree) && d_[j] > dtol &&
                 x_[j] > lo_[j]) {
        gain = d_[j];
        dj_dir = -1.0;
      } else {
        continue;
      }
      if (bland) {
        q = j;
        dir = dj_dir;
        break;
      }
      if (gain > best) {
        best = gain;
        q = j;
        dir = dj_dir;
      }
    }
    if (q < 0) {
      if (phase_one) return Outcome::kInfeasible;
      if (factor_.num_updates() > 0) {
        Refactor();
        ComputePrimal();
        ComputeDuals();
        fresh = true;
        if (PrimalInfeasibility() > ptol || DualInfeasibility() > dtol) continue;
      }
      return Outcome::kOptimal;
    }

    LoadColumn(q, alpha_col_);
    factor_.ftran(alpha_col_);

    // Harris ratio test. x_B(theta) = x_B - theta * dir * alpha.
    auto blocking_bound = [&](int p, double a, double* bound) {
      const int v = head_[p];
      if (a > 0) {
        if (phase_one && x_[v] > up_[v] + ptol) {
          *bound = up_[v];
          return true;
        }
        if (phase_one && x_[v] < lo_[v] - ptol) return false;
        if (lo_[v] == -kInf) return false;
        *bound = lo_[v];
        return true;
      }
      if (phase_one && x_[v] < lo_[v] - ptol) {
        *bound = lo_[v];
        return true;
      }
      if (phase_one && x_[v] > up_[v] + ptol) return false;
      if (up_[v] == kInf) return false;
      *bound = up_[v];
      return true;
    };
    const double harris = bland ? 0.0 : ptol;
    double tmax = kInf;
    for (int p = 0; p < m_; ++p) {
      const double a = dir * alpha_col_.values[p];
      if (std::abs(a) <= kPivotTol) continue;
      double bound;
      if (!blocking_bound(p, a, &bound)) continue;
      const double ratio = (std::abs(x_[head_[p]] - bound) + harris) / std::abs(a);
      tmax = std::min(tmax, ratio);
    }
    const double own = dir > 0 ? up_[q] - x_[q] : x_[q] - lo_[q];
    if (tmax == kInf && own == kInf) {
      if (phase_one) {
        Refactor();
        ComputePrimal();
        if (++mismatch > 5) {
          throw Error(ErrorCode::kSolverFailure, "phase one lost its direction");
        }
        continue;
      }
      ray_.assign(N_, 0.0);
      ray_[q] = dir;
      for (int p = 0; p < m_; ++p) ray_[head_[p]] = -dir * alpha_col_.values[p];
      return Outcome::kUnbounded;
    }
    int r = -1;
    double theta = 0.0;
    State leaving_state = State::kLower;
    if (own <= tmax) {
      theta = own;
    } else {
      double best_alpha = 0.0;
      for (int p = 0; p < m_; ++p) {
        const double a = dir * alpha_col_.values[p];
        if (std::abs(a) <= kPivotTol) continue;
        double bound;
        if (!blocking_bound(p, a, &bound)) continue;
        const double ratio = std::abs(x_[head_[p]] - bound) / std::abs(a);
        if (ratio > tmax) continue;
        bool better;
        if (bland) {
          better = r < 0 || ratio < theta || (ratio == theta && head_[p] < head_[r]);
        } else {
          better = std::abs(a) > best_alpha;
        }
        if (better) {
          r = p;
          theta = ratio;
          best_alpha = std::abs(a);
          leaving_state = bound == lo_[head_[p]] ? State::kLower : State::kUpper;
        }
      }
    }

    if (r >= 0 && !phase_one) {
      PivotRow(r);
      const double check = alpha_row_[q];
      if (std::abs(check - alpha_col_.values[r]) > 1e-7 * (1.0 + std::abs(alpha_col_.values[r]))) {
        ClearPivotRow();
        if (++mismatch > 5) {
          throw Error(ErrorCode::kSolverFailure, "unstable pivot in primal simplex");
        }
        Refactor();
        ComputePrimal();
        fresh = false;
        continue;
      }
    }
    mismatch = 0;

    for (int p = 0; p < m_; ++p) {
      if (alpha_col_.values[p] != 0.0) x_[head_[p]] -= theta * dir * alpha_col_.values[p];
    }
    x_[q] += theta * dir;
    if (r < 0) {
      if (dir > 0) {
        x_[q] = up_[q];
        state_[q] = State::kUpper;
      } else {
        x_[q] = lo_[q];
        state_[q] = State::kLower;
      }
    } else {
      const int leave = head_[r];
      if (!phase_one) {
        const double dq = d_[q] / alpha_col_.values[r];
        for (int j : row_touched_) d_[j] -= dq * alpha_row_[j];
        ClearPivotRow();
        ChangeBasis(r, q, leaving_state);
        d_[leave] = -dq;
      } else {
        ChangeBasis(r, q, leaving_state);
      }
    }
    ++iterations_;
    if (theta <= 1e-12) {
      if (++degenerate_run > degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

// Moves nonbasic columns that sit strictly inside their bounds either to a
// bound or into the basis, keeping the point primal feasible. Returns true
// when every nonbasic column ends at a bound.
bool Simplex::MakeVertex() {
  bool vertex = true;
  for (int q = 0; q < N_; ++q) {
    if (state_[q] == State::kBasic || NonbasicAtBound(q)) continue;
    if (NeedRefactor()) {
      Refactor();
      ComputePrimal();
    }
    LoadColumn(q, alpha_col_);
    factor_.ftran(alpha_col_);
    bool moved = false;
    const double first = d_[q] > 0 ? -1.0 : 1.0;
    for (double dir : {first, -first}) {
      double theta = dir > 0 ? up_[q] - x_[q] : x_[q] - lo_[q];
      int r = -1;
      State leaving_state = State::kLower;
      double best_alpha = 0.0;
      for (int p = 0; p < m_; ++p) {
        const double a = dir * alpha_col_.values[p];
        if (std::abs(a) <= kPivotTol) continue;
        const int v = head_[p];
        const double bound = a > 0 ? lo_[v] : up_[v];
        if (std::abs(bound) == kInf) continue;
        const double ratio = std::max(0.0, (x_[v] - bound) / a);
        if (ratio < theta - 1e-12 ||
            (ratio <= theta + 1e-12 && std::abs(a) > best_alpha)) {
          theta = ratio;
          r = p;
          best_alpha = std::abs(a);
          leaving_state = a > 0 ? State::kLower : State::kUpper;
        }
      }
      if (theta == kInf) continue;
      for (int p = 0; p < m_; ++p) {
        if (alpha_col_.values[p] != 0.0) x_[head_[p]] -= theta * dir * alpha_col_.values[p];
      }
      x_[q] += theta * dir;
      if (r < 0) {
        state_[q] = dir > 0 ? State::kUpper : State::kLower;
        x_[q] = dir > 0 ? up_[q] : lo_[q];
      } else {
        const int leave = head_[r];
        PivotRow(r);
        const double dq = d_[q] / alpha_col_.values[r];
        for (int j : row_touched_) d_[j] -= dq * alpha_row_[j];
        ClearPivotRow();
        ChangeBasis(r, q, leaving_state);
        d_[leave] = -dq;
      }
      ++iterations_;
      moved = true;
      break;
    }
    if (!moved) vertex = false;
  }
  return vertex;
}

LPSolution Simplex::Run() {
  if (model_.num_nonzeros() > options_.max_nonzeros) {
    throw Error(ErrorCode::kSolverFailure,
                "model has " + std::to_string(model_.num_nonzeros()) +
                    " nonzeros, above the bundled solver limit of " +
                    std::to_string(options_.max_nonzeros) +
                    "; export it with write_mps and use an external solver");
  }
  BuildMatrices();
  ComputeScaling();
  InitBounds();
  SlackBasis();
  alpha_row_.assign(N_, 0.0);
  in_row_.assign(N_, 0);
  rho_.resize(m_);
  alpha_col_.resize(m_);
  tau_.resize(m_);
  flip_col_.resize(m_);

  const bool use_dual = options_.method != SimplexMethod::kPrimal;
  Outcome outcome = Outcome::kOptimal;
  if (use_dual) {
    if (options_.perturb_costs) PerturbCosts();
    CrashFreeColumns();
    Refactor();
    ComputeDuals();
    bool dual_feasible = PlaceForDual() == 0;
    if (!dual_feasible) dual_feasible = DualPhaseOne();
    if (dual_feasible) {
      outcome = DualPhase();
      Log("dual2");
      if (outcome == Outcome::kIterationLimit || outcome == Outcome::kInfeasible) {
        return Finish(outcome);
      }
    }
    cost_ = true_cost_;
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    Refactor();
    ComputePrimal();
    ComputeDuals();
    if (PrimalInfeasibility() <= options_.feas_tol &&
        DualInfeasibility() <= options_.opt_tol) {
      outcome = Outcome::kOptimal;
    } else {
      outcome = PrimalPhase();
      Log("primal");
      if (outcome != Outcome::kOptimal) return Finish(outcome);
    }
    if (!options_.require_vertex) break;
    bool all_at_bounds = true;
    for (int j = 0; j < N_; ++j) {
      if (state_[j] != State::kBasic && !NonbasicAtBound(j)) all_at_bounds = false;
    }
    if (all_at_bounds) break;
    MakeVertex();
  }
  return Finish(outcome);
}

LPSolution Simplex::Finish(Outcome outcome) {
  LPSolution sol;
  sol.iterations = iterations_;
  switch (outcome) {
    case Outcome::kOptimal: sol.status = SolveStatus::kOptimal; break;
    case Outcome::kUnbounded: sol.status = SolveStatus::kUnbounded; break;
    case Outcome::kInfeasible: sol.status = SolveStatus::kInfeasible; break;
    case Outcome::kIterationLimit: sol.status = SolveStatus::kIterationLimit; break;
  }
  if (outcome == Outcome::kOptimal) {
    cost_ = true_cost_;
    Refactor();
    ComputePrimal();
    ComputeDuals();
  }
  sol.primal.resize(n_);
  for (int j = 0; j < n_; ++j) {
    double v = x_[j];
    if (state_[j] != State::kBasic) {
      if (state_[j] == State::kLower) v = lo_[j];
      if (state_[j] == State::kUpper) v = up_[j];
    }
    sol.primal[j] = v * col_scale_[j];
    if (state_[j] == State::kLower) sol.primal[j] = model_.column_lower(j);
    if (state_[j] == State::kUpper) sol.primal[j] = model_.column_upper(j);
  }
  sol.row_duals.resize(m_);
  for (int i = 0; i < m_; ++i) sol.row_duals[i] = pi_.empty() ? 0.0 : pi_[i] * row_scale_[i];
  sol.reduced_costs.resize(n_);
  for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = d_[j] / col_scale_[j];
  sol.objective = model_.objective_value(sol.primal);
  int off_bound = 0;
  for (int j = 0; j < N_; ++j) {
    if (state_[j] != State::kBasic && !NonbasicAtBound(j)) ++off_bound;
  }
  sol.nonbasic_off_bound = off_bound;
  sol.is_vertex = outcome == Outcome::kOptimal && off_bound == 0;
  if (outcome == Outcome::kUnbounded) {
    sol.ray.resize(n_);
    for (int j = 0; j < n_; ++j) sol.ray[j] = ray_[j] * col_scale_[j];
  }
  return sol;
}

}  // namespace

LPSolution solve(const LPModel& model, const SolverOptions& options) {
  if (!(options.feas_tol > 0.0) || !(options.opt_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "solver tolerances must be > 0");
  }
  Simplex simplex(model, options);
  return simplex.Run();
}

}  // namespace sparseldr
