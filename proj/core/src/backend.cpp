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

#include "sparseldr/backend.hpp"

#include <map>
#include <mutex>

#include "sparseldr/error.hpp"

namespace sparseldr {

struct BackendRegistry::Impl {
  mutable std::mutex mu;
  std::map<std::string, SolveFunction> backends;
};

BackendRegistry::BackendRegistry() : impl_(new Impl) {
  impl_->backends["bundled"] = [](const LPModel& model,
                                  const SolverOptions& options) {
    return sparseldr::solve(model, options);
  };
}

BackendRegistry& BackendRegistry::global() {
  static BackendRegistry* registry = new BackendRegistry();
  return *registry;
}

void BackendRegistry::add(const std::string& name, SolveFunction fn) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->backends[name] = std::move(fn);
}

bool BackendRegistry::contains(const std::string& name) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->backends.count(name) > 0;
}

std::vector<std::string> BackendRegistry::names() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  std::vector<std::string> out;
  for (const auto& [name, fn] : impl_->backends) out.push_back(name);
  return out;
}

LPSolution BackendRegistry::solve(const std::string& name, const LPModel& model,
                                  const SolverOptions& options) const {
  SolveFunction fn;
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->backends.find(name);
    if (it == impl_->backends.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown LP backend " + name);
    }
    fn = it->second;
  }
  return fn(model, options);
}

}  // namespace sparseldr
