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

#ifndef SPARSELDR_BASIS_FACTOR_HPP_
#define SPARSELDR_BASIS_FACTOR_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace sparseldr {

// Dense value array with a list of the entries that may be nonzero. Every
// nonzero entry is listed exactly once; listed entries may be zero.
class IndexedVector {
 public:
  void resize(int n) {
    values.assign(n, 0.0);
    listed_.assign(n, 0);
    index.clear();
  }
  int size() const { return static_cast<int>(values.size()); }
  void clear();
  // Adds `delta` to entry i, listing it if needed.
  void add(int i, double delta) {
    if (!listed_[i]) {
      listed_[i] = 1;
      index.push_back(i);
    }
    values[i] += delta;
  }
  void set(int i, double v) {
    if (!listed_[i]) {
      listed_[i] = 1;
      index.push_back(i);
    }
    values[i] = v;
  }
  // Relists from the values after a dense operation.
  void rebuild();
  void swap(IndexedVector& other) {
    values.swap(other.values);
    index.swap(other.index);
    listed_.swap(other.listed_);
  }

  std::vector<double> values;
  std::vector<int> index;
  // Running average of the result density of solves on this vector.
  double density = 0.0;

 private:
  friend class BasisFactor;
  std::vector<char> listed_;
};

// Sparse LU factorization of a square basis matrix with product-form
// updates. Rows are indexed by constraint, columns by basis position.
class BasisFactor {
 public:
  // Factorizes the m x m matrix whose column k holds the entries
  // index/value[start[k] .. start[k+1]). Returns the number of positions
  // that could not be pivoted (0 when nonsingular).
  int factorize(int m, std::span<const std::int64_t> start,
                std::span<const int> index, std::span<const double> value);

  // After a singular factorization: positions left without a pivot, and
  // the rows that were not covered. Both lists have equal length.
  const std::vector<int>& singular_positions() const { return singular_pos_; }
  const std::vector<int>& unpivoted_rows() const { return unpivoted_rows_; }

  // Solves B z = x. Input indexed by row, output by basis position.
  void ftran(std::vector<double>& x) const;
  // Solves B^T y = c. Input indexed by basis position, output by row.
  void btran(std::vector<double>& y) const;
  // Same solves on indexed vectors. Sparse inputs use depth-first reach
  // so the cost follows the nonzeros touched rather than m.
  void ftran(IndexedVector& x) const;
  void btran(IndexedVector& y) const;

  // Replaces the column at `position` by the column whose ftran is `alpha`.
  void update(int position, const std::vector<double>& alpha);
  void update(int position, const IndexedVector& alpha);

  int num_updates() const { return static_cast<int>(eta_pos_.size()); }
  std::int64_t factor_nonzeros() const {
    return static_cast<std::int64_t>(l_index_.size() + u_index_.size()) +
           static_cast<std::int64_t>(diag_.size());
  }
  std::int64_t eta_nonzeros() const {
    return static_cast<std::int64_t>(eta_index_.size());
  }

  double pivot_threshold = 0.1;
  double pivot_tolerance = 1e-11;
  double drop_tolerance = 1e-14;

 private:
  class CountLists {
   public:
    void reset(int n);
    void insert(int x, int count);
    void remove(int x);
    void move(int x, int count) {
      remove(x);
      insert(x, count);
    }
    int first(int count) const { return head_[count]; }
    int next(int x) const { return next_[x]; }

   private:
    std::vector<int> head_;
    std::vector<int> next_;
    std::vector<int> prev_;
    std::vector<int> count_;
  };

  bool FindPivot(int* pivot_row, int* pivot_col) const;
  void BuildTransposes();
  double ColumnMax(int k) const;
  // Adjacency of one triangular factor seen as a graph on rows or
  // positions: edges of node v are adj[begin[v] .. end[v]).
  struct Graph {
    std::vector<std::int64_t> begin;
    std::vector<std::int64_t> end;
    const std::vector<int>* adj = nullptr;
  };
  void BuildGraphs();
  // Nodes reachable from `seeds`, in topological order.
  void Reach(const Graph& g, const std::vector<int>& seeds) const;
  bool UseSparse(const IndexedVector& v) const;
  void RecordDensity(IndexedVector& v) const;
  void Eliminate(int p, int q);

  int m_ = 0;
  // Pivot sequence of the last factorization.
  std::vector<int> piv_row_;
  std::vector<int> piv_col_;
  std::vector<double> diag_;
  std::vector<std::int64_t> l_start_;
  std::vector<int> l_index_;
  std::vector<double> l_value_;
  std::vector<std::int64_t> u_start_;
  std::vector<int> u_index_;
  std::vector<double> u_value_;
  // U by column position and L by row, as (target row, value) pairs, for
  // solves that skip zero entries.
  std::vector<std::int64_t> ucol_start_;
  std::vector<int> ucol_row_;
  std::vector<double> ucol_value_;
  std::vector<std::int64_t> lrow_start_;
  std::vector<int> lrow_target_;
  std::vector<double> lrow_value_;
  std::vector<int> singular_pos_;
  std::vector<int> unpivoted_rows_;
  std::vector<int> step_of_row_;
  std::vector<int> step_of_col_;
  Graph l_graph_;
  Graph u_graph_;
  Graph ut_graph_;
  Graph lt_graph_;

  // Product-form etas applied after the LU solve.
  std::vector<int> eta_pos_;
  std::vector<double> eta_pivot_;
  std::vector<std::int64_t> eta_start_{0};
  std::vector<int> eta_index_;
  std::vector<double> eta_value_;

  // Active submatrix during elimination.
  std::vector<std::vector<int>> col_rows_;
  std::vector<std::vector<double>> col_vals_;
  std::vector<std::vector<int>> row_cols_;
  std::vector<char> row_done_;
  std::vector<char> col_done_;
  std::vector<int> mark_;
  CountLists col_lists_;
  CountLists row_lists_;

  mutable std::vector<double> work_;
  mutable IndexedVector iwork_;
  mutable std::vector<int> order_;
  mutable std::vector<int> stack_;
  mutable std::vector<std::int64_t> stack_edge_;
  mutable std::vector<unsigned> visit_;
  mutable unsigned stamp_ = 0;
};

}  // namespace sparseldr

#endif  // SPARSELDR_BASIS_FACTOR_HPP_
