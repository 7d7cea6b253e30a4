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

#include "sparseldr/basis_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparseldr {

void IndexedVector::clear() {
  if (index.size() * 3 > values.size()) {
    std::fill(values.begin(), values.end(), 0.0);
    std::fill(listed_.begin(), listed_.end(), 0);
  } else {
    for (int i : index) {
      values[i] = 0.0;
      listed_[i] = 0;
    }
  }
  index.clear();
}

void IndexedVector::rebuild() {
  index.clear();
  const int n = size();
  for (int i = 0; i < n; ++i) {
    listed_[i] = values[i] != 0.0;
    if (listed_[i]) index.push_back(i);
  }
}

void BasisFactor::CountLists::reset(int n) {
  head_.assign(n + 2, -1);
  next_.assign(n, -1);
  prev_.assign(n, -1);
  count_.assign(n, -1);
}

void BasisFactor::CountLists::insert(int x, int count) {
  count_[x] = count;
  prev_[x] = -1;
  next_[x] = head_[count];
  if (head_[count] >= 0) prev_[head_[count]] = x;
  head_[count] = x;
}

void BasisFactor::CountLists::remove(int x) {
  const int c = count_[x];
  if (c < 0) return;
  if (prev_[x] >= 0) {
    next_[prev_[x]] = next_[x];
  } else {
    head_[c] = next_[x];
  }
  if (next_[x] >= 0) prev_[next_[x]] = prev_[x];
  count_[x] = -1;
}

int BasisFactor::factorize(int m, std::span<const std::int64_t> start,
                           std::span<const int> index,
                           std::span<const double> value) {
  m_ = m;
  piv_row_.clear();
  piv_col_.clear();
  diag_.clear();
  l_start_.assign(1, 0);
  l_index_.clear();
  l_value_.clear();
  u_start_.assign(1, 0);
  u_index_.clear();
  u_value_.clear();
  singular_pos_.clear();
  unpivoted_rows_.clear();
  eta_pos_.clear();
  eta_pivot_.clear();
  eta_start_.assign(1, 0);
  eta_index_.clear();
  eta_value_.clear();
  work_.assign(m, 0.0);

  col_rows_.resize(m);
  col_vals_.resize(m);
  row_cols_.resize(m);
  for (int k = 0; k < m; ++k) {
    col_rows_[k].clear();
    col_vals_[k].clear();
    row_cols_[k].clear();
  }
  for (int k = 0; k < m; ++k) {
    for (std::int64_t e = start[k]; e < start[k + 1]; ++e) {
      if (value[e] == 0.0) continue;
      col_rows_[k].push_back(index[e]);
      col_vals_[k].push_back(value[e]);
      row_cols_[index[e]].push_back(k);
    }
  }
  row_done_.assign(m, 0);
  col_done_.assign(m, 0);
  mark_.assign(m, -1);
  col_lists_.reset(m);
  row_lists_.reset(m);
  for (int k = 0; k < m; ++k) {
    col_lists_.insert(k, static_cast<int>(col_rows_[k].size()));
    row_lists_.insert(k, static_cast<int>(row_cols_[k].size()));
  }

  for (int step = 0; step < m; ++step) {
    int p = -1;
    int q = -1;
    if (!FindPivot(&p, &q)) break;
    Eliminate(p, q);
  }

  for (int k = 0; k < m; ++k) {
    if (!col_done_[k]) singular_pos_.push_back(k);
    if (!row_done_[k]) unpivoted_rows_.push_back(k);
  }
  BuildTransposes();
  BuildGraphs();
  return static_cast<int>(singular_pos_.size());
}

void BasisFactor::BuildTransposes() {
  const int rank = static_cast<int>(piv_row_.size());
  ucol_start_.assign(m_ + 1, 0);
  for (int k : u_index_) ++ucol_start_[k + 1];
  for (int k = 0; k < m_; ++k) ucol_start_[k + 1] += ucol_start_[k];
  ucol_row_.resize(u_index_.size());
  ucol_value_.resize(u_index_.size());
  std::vector<std::int64_t> fill(ucol_start_.begin(), ucol_start_.end() - 1);
  for (int j = 0; j < rank; ++j) {
    for (std::int64_t e = u_start_[j]; e < u_start_[j + 1]; ++e) {
      const std::int64_t slot = fill[u_index_[e]]++;
      ucol_row_[slot] = piv_row_[j];
      ucol_value_[slot] = u_value_[e];
    }
  }
  lrow_start_.assign(m_ + 1, 0);
  for (int i : l_index_) ++lrow_start_[i + 1];
  for (int i = 0; i < m_; ++i) lrow_start_[i + 1] += lrow_start_[i];
  lrow_target_.resize(l_index_.size());
  lrow_value_.resize(l_index_.size());
  fill.assign(lrow_start_.begin(), lrow_start_.end() - 1);
  for (int j = 0; j < rank; ++j) {
    for (std::int64_t e = l_start_[j]; e < l_start_[j + 1]; ++e) {
      const std::int64_t slot = fill[l_index_[e]]++;
      lrow_target_[slot] = piv_row_[j];
      lrow_value_[slot] = l_value_[e];
    }
  }
}

void BasisFactor::BuildGraphs() {
  const int rank = static_cast<int>(piv_row_.size());
  step_of_row_.assign(m_, -1);
  step_of_col_.assign(m_, -1);
  for (int j = 0; j < rank; ++j) {
    step_of_row_[piv_row_[j]] = j;
    step_of_col_[piv_col_[j]] = j;
  }
  for (Graph* g : {&l_graph_, &u_graph_, &ut_graph_, &lt_graph_}) {
    g->begin.assign(m_, 0);
    g->end.assign(m_, 0);
  }
  l_graph_.adj = &l_index_;
  u_graph_.adj = &ucol_row_;
  ut_graph_.adj = &u_index_;
  lt_graph_.adj = &lrow_target_;
  for (int v = 0; v < m_; ++v) {
    const int jr = step_of_row_[v];
    if (jr >= 0) {
      l_graph_.begin[v] = l_start_[jr];
      l_graph_.end[v] = l_start_[jr + 1];
      const int k = piv_col_[jr];
      u_graph_.begin[v] = ucol_start_[k];
      u_graph_.end[v] = ucol_start_[k + 1];
    }
    const int jc = step_of_col_[v];
    if (jc >= 0) {
      ut_graph_.begin[v] = u_start_[jc];
      ut_graph_.end[v] = u_start_[jc + 1];
    }
    lt_graph_.begin[v] = lrow_start_[v];
    lt_graph_.end[v] = lrow_start_[v + 1];
  }
  visit_.assign(m_, 0);
  stamp_ = 0;
  iwork_.resize(m_);
}

void BasisFactor::Reach(const Graph& g, const std::vector<int>& seeds) const {
  if (++stamp_ == 0) {
    std::fill(visit_.begin(), visit_.end(), 0u);
    stamp_ = 1;
  }
  order_.clear();
  for (int s : seeds) {
    if (visit_[s] == stamp_) continue;
    visit_[s] = stamp_;
    stack_.push_back(s);
    stack_edge_.push_back(g.begin[s]);
    while (!stack_.empty()) {
      const int v = stack_.back();
      std::int64_t e = stack_edge_.back();
      const std::int64_t end = g.end[v];
      int next = -1;
      while (e < end) {
        const int w = (*g.adj)[e++];
        if (visit_[w] != stamp_) {
          next = w;
          break;
        }
      }
      stack_edge_.back() = e;
      if (next >= 0) {
        visit_[next] = stamp_;
        stack_.push_back(next);
        stack_edge_.push_back(g.begin[next]);
      } else {
        order_.push_back(v);
        stack_.pop_back();
        stack_edge_.pop_back();
      }
    }
  }
  std::reverse(order_.begin(), order_.end());
}

bool BasisFactor::UseSparse(const IndexedVector& v) const {
  return v.index.size() * 10 < static_cast<std::size_t>(m_) && v.density < 0.1;
}

void BasisFactor::RecordDensity(IndexedVector& v) const {
  const double now = m_ > 0 ? static_cast<double>(v.index.size()) / m_ : 0.0;
  v.density = 0.9 * v.density + 0.1 * now;
}

double BasisFactor::ColumnMax(int k) const {
  double best = 0.0;
  for (double v : col_vals_[k]) best = std::max(best, std::abs(v));
  return best;
}

bool BasisFactor::FindPivot(int* pivot_row, int* pivot_col) const {
  constexpr int kSearchLimit = 4;
  long best_cost = std::numeric_limits<long>::max();
  int searched = 0;
  for (int count = 1; count <= m_; ++count) {
    for (int k = col_lists_.first(count); k >= 0; k = col_lists_.next(k)) {
      const double cmax = ColumnMax(k);
      if (cmax <= pivot_tolerance) continue;
      const auto& rows = col_rows_[k];
      const auto& vals = col_vals_[k];
      for (std::size_t e = 0; e < rows.size(); ++e) {
        const double a = std::abs(vals[e]);
        if (a < pivot_threshold * cmax || a <= pivot_tolerance) continue;
        const long cost = static_cast<long>(row_cols_[rows[e]].size() - 1) *
                          (count - 1);
        if (cost < best_cost) {
          best_cost = cost;
          *pivot_row = rows[e];
          *pivot_col = k;
          if (cost == 0) return true;
        }
      }
      if (++searched >= kSearchLimit && best_cost < std::numeric_limits<long>::max()) {
        return true;
      }
    }
    for (int i = row_lists_.first(count); i >= 0; i = row_lists_.next(i)) {
      for (int k : row_cols_[i]) {
        const auto& rows = col_rows_[k];
        double a = 0.0;
        for (std::size_t e = 0; e < rows.size(); ++e) {
          if (rows[e] == i) {
            a = std::abs(col_vals_[k][e]);
            break;
          }
        }
        if (a <= pivot_tolerance || a < pivot_threshold * ColumnMax(k)) continue;
        const long cost =
            static_cast<long>(count - 1) * static_cast<long>(rows.size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          *pivot_row = i;
          *pivot_col = k;
          if (cost == 0) return true;
        }
      }
      if (++searched >= kSearchLimit && best_cost < std::numeric_limits<long>::max()) {
        return true;
      }
    }
    if (best_cost <= static_cast<long>(count - 1) * count) return true;
  }
  return best_cost < std::numeric_limits<long>::max();
}

void BasisFactor::Eliminate(int p, int q) {
  // Row p leaves the active matrix: its entries become the U row.
  for (int k : row_cols_[p]) {
    if (k == q) continue;
    auto& rows = col_rows_[k];
    auto& vals = col_vals_[k];
    for (std::size_t e = 0; e < rows.size(); ++e) {
      if (rows[e] == p) {
        u_index_.push_back(k);
        u_value_.push_back(vals[e]);
        rows[e] = rows.back();
        vals[e] = vals.back();
        rows.pop_back();
        vals.pop_back();
        break;
      }
    }
    col_lists_.move(k, static_cast<int>(rows.size()));
  }
  const std::int64_t u_begin = u_start_.back();
  const std::int64_t u_end = static_cast<std::int64_t>(u_index_.size());
  u_start_.push_back(u_end);

  // Column q leaves: its other entries become the L multipliers.
  double pivot = 0.0;
  {
    const auto& rows = col_rows_[q];
    const auto& vals = col_vals_[q];
    for (std::size_t e = 0; e < rows.size(); ++e) {
      if (rows[e] == p) {
        pivot = vals[e];
        break;
      }
    }
    for (std::size_t e = 0; e < rows.size(); ++e) {
      const int i = rows[e];
      if (i == p) continue;
      l_index_.push_back(i);
      l_value_.push_back(vals[e] / pivot);
      auto& cols = row_cols_[i];
      for (std::size_t f = 0; f < cols.size(); ++f) {
        if (cols[f] == q) {
          cols[f] = cols.back();
          cols.pop_back();
          break;
        }
      }
    }
  }
  const std::int64_t l_begin = l_start_.back();
  const std::int64_t l_end = static_cast<std::int64_t>(l_index_.size());
  l_start_.push_back(l_end);

  piv_row_.push_back(p);
  piv_col_.push_back(q);
  diag_.push_back(pivot);
  row_done_[p] = 1;
  col_done_[q] = 1;
  col_lists_.remove(q);
  row_lists_.remove(p);
  col_rows_[q].clear();
  col_vals_[q].clear();
  row_cols_[p].clear();

  // Schur complement update a_ik -= l_i u_k.
  if (l_end > l_begin) {
    for (std::int64_t ue = u_begin; ue < u_end; ++ue) {
      const int k = u_index_[ue];
      const double u = u_value_[ue];
      auto& rows = col_rows_[k];
      auto& vals = col_vals_[k];
      for (std::size_t e = 0; e < rows.size(); ++e) mark_[rows[e]] = static_cast<int>(e);
      for (std::int64_t le = l_begin; le < l_end; ++le) {
        const int i = l_index_[le];
        const double delta = -l_value_[le] * u;
        if (mark_[i] >= 0) {
          vals[mark_[i]] += delta;
        } else if (std::abs(delta) > drop_tolerance) {
          mark_[i] = static_cast<int>(rows.size());
          rows.push_back(i);
          vals.push_back(delta);
          row_cols_[i].push_back(k);
        }
      }
      for (int r : rows) mark_[r] = -1;
      col_lists_.move(k, static_cast<int>(rows.size()));
    }
  }
  for (std::int64_t le = l_begin; le < l_end; ++le) {
    const int i = l_index_[le];
    row_lists_.move(i, static_cast<int>(row_cols_[i].size()));
  }
}

void BasisFactor::ftran(std::vector<double>& x) const {
  const int rank = static_cast<int>(piv_row_.size());
  for (int j = 0; j < rank; ++j) {
    const double v = x[piv_row_[j]];
    if (v == 0.0) continue;
    for (std::int64_t e = l_start_[j]; e < l_start_[j + 1]; ++e) {
      x[l_index_[e]] -= l_value_[e] * v;
    }
  }
  std::vector<double>& z = work_;
  z.assign(m_, 0.0);
  for (int j = rank - 1; j >= 0; --j) {
    const double v = x[piv_row_[j]];
    if (v == 0.0) continue;
    const int k = piv_col_[j];
    const double zk = v / diag_[j];
    z[k] = zk;
    for (std::int64_t e = ucol_start_[k]; e < ucol_start_[k + 1]; ++e) {
      x[ucol_row_[e]] -= ucol_value_[e] * zk;
    }
  }
  const int etas = static_cast<int>(eta_pos_.size());
  for (int r = 0; r < etas; ++r) {
    const int p = eta_pos_[r];
    const double zp = z[p] / eta_pivot_[r];
    z[p] = zp;
    if (zp == 0.0) continue;
    for (std::int64_t e = eta_start_[r]; e < eta_start_[r + 1]; ++e) {
      z[eta_index_[e]] -= eta_value_[e] * zp;
    }
  }
  x.swap(z);
}

void BasisFactor::btran(std::vector<double>& y) const {
  for (int r = static_cast<int>(eta_pos_.size()) - 1; r >= 0; --r) {
    const int p = eta_pos_[r];
    double s = y[p];
    for (std::int64_t e = eta_start_[r]; e < eta_start_[r + 1]; ++e) {
      s -= eta_value_[e] * y[eta_index_[e]];
    }
    y[p] = s / eta_pivot_[r];
  }
  const int rank = static_cast<int>(piv_row_.size());
  std::vector<double>& w = work_;
  w.assign(m_, 0.0);
  for (int j = 0; j < rank; ++j) {
    const double wp = y[piv_col_[j]] / diag_[j];
    w[piv_row_[j]] = wp;
    if (wp == 0.0) continue;
    for (std::int64_t e = u_start_[j]; e < u_start_[j + 1]; ++e) {
      y[u_index_[e]] -= u_value_[e] * wp;
    }
  }
  for (int j = rank - 1; j >= 0; --j) {
    const int i = piv_row_[j];
    const double wi = w[i];
    if (wi == 0.0) continue;
    for (std::int64_t e = lrow_start_[i]; e < lrow_start_[i + 1]; ++e) {
      w[lrow_target_[e]] -= lrow_value_[e] * wi;
    }
  }
  y.swap(w);
}

void BasisFactor::ftran(IndexedVector& x) const {
  if (!UseSparse(x)) {
    ftran(x.values);
    x.rebuild();
    RecordDensity(x);
    return;
  }
  Reach(l_graph_, x.index);
  for (int r : order_) {
    const double v = x.values[r];
    if (v == 0.0) continue;
    for (std::int64_t e = l_graph_.begin[r]; e < l_graph_.end[r]; ++e) {
      x.add(l_index_[e], -l_value_[e] * v);
    }
  }
  Reach(u_graph_, x.index);
  IndexedVector& z = iwork_;
  for (int r : order_) {
    const int j = step_of_row_[r];
    if (j < 0) continue;
    const double v = x.values[r];
    if (v == 0.0) continue;
    const int k = piv_col_[j];
    const double zk = v / diag_[j];
    z.set(k, zk);
    for (std::int64_t e = ucol_start_[k]; e < ucol_start_[k + 1]; ++e) {
      x.add(ucol_row_[e], -ucol_value_[e] * zk);
    }
  }
  x.clear();
  x.swap(z);
  const int etas = static_cast<int>(eta_pos_.size());
  for (int r = 0; r < etas; ++r) {
    const int p = eta_pos_[r];
    if (x.values[p] == 0.0) continue;
    const double zp = x.values[p] / eta_pivot_[r];
    x.values[p] = zp;
    for (std::int64_t e = eta_start_[r]; e < eta_start_[r + 1]; ++e) {
      x.add(eta_index_[e], -eta_value_[e] * zp);
    }
  }
  RecordDensity(x);
}

void BasisFactor::btran(IndexedVector& y) const {
  if (!UseSparse(y)) {
    btran(y.values);
    y.rebuild();
    RecordDensity(y);
    return;
  }
  for (int r = static_cast<int>(eta_pos_.size()) - 1; r >= 0; --r) {
    const int p = eta_pos_[r];
    double s = y.values[p];
    for (std::int64_t e = eta_start_[r]; e < eta_start_[r + 1]; ++e) {
      s -= eta_value_[e] * y.values[eta_index_[e]];
    }
    if (s != 0.0 || y.values[p] != 0.0) y.set(p, s / eta_pivot_[r]);
  }
  Reach(ut_graph_, y.index);
  IndexedVector& w = iwork_;
  for (int k : order_) {
    const int j = step_of_col_[k];
    if (j < 0) continue;
    const double v = y.values[k];
    if (v == 0.0) continue;
    const double wp = v / diag_[j];
    w.set(piv_row_[j], wp);
    for (std::int64_t e = u_start_[j]; e < u_start_[j + 1]; ++e) {
      y.add(u_index_[e], -u_value_[e] * wp);
    }
  }
  y.clear();
  y.swap(w);
  Reach(lt_graph_, y.index);
  for (int i : order_) {
    const double wi = y.values[i];
    if (wi == 0.0) continue;
    for (std::int64_t e = lrow_start_[i]; e < lrow_start_[i + 1]; ++e) {
      y.add(lrow_target_[e], -lrow_value_[e] * wi);
    }
  }
  RecordDensity(y);
}

void BasisFactor::update(int position, const IndexedVector& alpha) {
  eta_pos_.push_back(position);
  eta_pivot_.push_back(alpha.values[position]);
  for (int i : alpha.index) {
    if (i == position) continue;
    if (std::abs(alpha.values[i]) > drop_tolerance) {
      eta_index_.push_back(i);
      eta_value_.push_back(alpha.values[i]);
    }
  }
  eta_start_.push_back(static_cast<std::int64_t>(eta_index_.size()));
}

void BasisFactor::update(int position, const std::vector<double>& alpha) {
  eta_pos_.push_back(position);
  eta_pivot_.push_back(alpha[position]);
  for (int i = 0; i < m_; ++i) {
    if (i == position) continue;
    if (std::abs(alpha[i]) > drop_tolerance) {
      eta_index_.push_back(i);
      eta_value_.push_back(alpha[i]);
    }
  }
  eta_start_.push_back(static_cast<std::int64_t>(eta_index_.size()));
}

}  // namespace sparseldr
