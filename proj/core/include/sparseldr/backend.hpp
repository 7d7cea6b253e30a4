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

#ifndef SPARSELDR_BACKEND_HPP_
#define SPARSELDR_BACKEND_HPP_

#include <functional>
#include <string>
#include <vector>

#include "sparseldr/lp_model.hpp"
#include "sparseldr/lp_solver.hpp"

namespace sparseldr {

using SolveFunction =
    std::function<LPSolution(const LPModel&, const SolverOptions&)>;

// Name-keyed LP backends. "bundled" (the built-in simplex) is always present.
class BackendRegistry {
 public:
  static BackendRegistry& global();

  void add(const std::string& name, SolveFunction fn);
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;
  LPSolution solve(const std::string& name, const LPModel& model,
                   const SolverOptions& options) const;

 private:
  BackendRegistry();
  struct Impl;
  Impl* impl_;
};

}  // namespace sparseldr

#endif  // SPARSELDR_BACKEND_HPP_
