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

#ifndef QLOCK_PARALLEL_HPP
#define QLOCK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qlock {

/// Worker count used by parallel_for. Defaults to QLOCK_THREADS when set,
/// otherwise 1. Results never depend on this value: tasks are keyed by index
/// and callers reduce in index order.
int num_threads();
void set_num_threads(int n);

/// Runs fn(0), ..., fn(n - 1), possibly concurrently. If tasks throw, the
/// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qlock

#endif  // QLOCK_PARALLEL_HPP
