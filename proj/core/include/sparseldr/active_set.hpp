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

#ifndef SPARSELDR_ACTIVE_SET_HPP_
#define SPARSELDR_ACTIVE_SET_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "sparseldr/instance.hpp"

namespace sparseldr {

// Triples (t, s, j) whose rule coefficient may be nonzero.
class ActiveSet {
 public:
  ActiveSet() = default;
  ActiveSet(int horizon, int n) : horizon_(horizon), n_(n) {}

  static ActiveSet full(int horizon, int n);

  int horizon() const { return horizon_; }
  int n() const { return n_; }

  // Returns false if already present. Throws on out-of-range triples.
  bool insert(const Triple& key);
  bool erase(const Triple& key) { return members_.erase(key) > 0; }
  bool contains(const Triple& key) const { return members_.count(key) > 0; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::set<Triple>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  // Order-independent digest of the members, used for staleness checks.
  std::uint64_t fingerprint() const;

 private:
  int horizon_ = 0;
  int n_ = 0;
  std::set<Triple> members_;
};

// Number of triples 1 <= s <= t <= H, 1 <= j <= n.
std::int64_t triple_count(int horizon, int n);

}  // namespace sparseldr

#endif  // SPARSELDR_ACTIVE_SET_HPP_
