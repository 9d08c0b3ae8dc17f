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

#include "qlock/error.hpp"

namespace qlock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::no_nullspace: return "no_nullspace";
    case ErrorCode::degenerate_outcome: return "degenerate_outcome";
    case ErrorCode::degenerate_ensemble: return "degenerate_ensemble";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace qlock
