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

#ifndef SPARSELDR_INSTANCE_IO_HPP_
#define SPARSELDR_INSTANCE_IO_HPP_

#include <string>

#include "sparseldr/instance.hpp"

namespace sparseldr {

std::string instance_to_json(const ROInstance& instance, int indent = -1);
ROInstance instance_from_json(const std::string& text);

ROInstance read_instance_file(const std::string& path);
void write_instance_file(const ROInstance& instance, const std::string& path);

std::string ldr_to_json(const LinearDecisionRule& ldr);

}  // namespace sparseldr

#endif  // SPARSELDR_INSTANCE_IO_HPP_
