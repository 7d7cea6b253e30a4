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

#ifndef SPARSELDR_MPS_HPP_
#define SPARSELDR_MPS_HPP_

#include <string>

#include "sparseldr/lp_model.hpp"

namespace sparseldr {

// Replaces every character outside [A-Za-z0-9_.] with '_'.
std::string sanitize_mps_name(const std::string& name);

// Fixed-column MPS text (NAME, optional OBJSENSE, ROWS, COLUMNS, RHS,
// BOUNDS). Names longer than eight characters widen their field, which free
// format readers accept. Throws kNameCollision when two sanitized names
// coincide.
std::string write_mps(const LPModel& model, const std::string& name = "SPARSELDR");

}  // namespace sparseldr

#endif  // SPARSELDR_MPS_HPP_
