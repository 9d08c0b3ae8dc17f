// Copyright 2026 The qlock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLOCK_ERROR_HPP
#define QLOCK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlock {

/// Machine-readable category carried by every library exception.
enum class ErrorCode {
  dimension_mismatch,
  domain_error,
  invalid_argument,
  index_out_of_range,
  no_nullspace,
  degenerate_outcome,
  degenerate_ensemble,
  invalid_config,
  infeasible,
  io_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qlock

#endif  // QLOCK_ERROR_HPP
