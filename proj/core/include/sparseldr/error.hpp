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

#ifndef SPARSELDR_ERROR_HPP_
#define SPARSELDR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sparseldr {

enum class ErrorCode {
  kInvalidArgument,
  kIndexOutOfRange,
  kHorizonTooLarge,
  kStaleIndex,
  kNameCollision,
  kMissingName,
  kNotOptimal,
  kEmptyCandidates,
  kSolverFailure,
  kParse,
};

const char* ToString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sparseldr

#endif  // SPARSELDR_ERROR_HPP_
