// Copyright 2026 The mixcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXCERT_CORE_PARALLEL_H
#define MIXCERT_CORE_PARALLEL_H

#include <cstdint>
#include <functional>
#include <vector>

namespace mixcert {

/// Runs body(begin, end) over disjoint ranges covering [0, n) on up to `jobs`
/// threads. Ranges are fixed-size chunks independent of the worker count, so
/// a caller that writes results by index gets output identical to the serial
/// run. body must only touch caller-provided per-index storage.
void parallel_for_chunks(std::int64_t n, int jobs,
                         const std::function<void(std::int64_t, std::int64_t)>& body);

/// Evaluates fn(i) for i in [0, n) and returns the results in index order.
/// Every unit derives its own randomness from its index, so the output does
/// not depend on the worker count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::int64_t n, int jobs, Fn fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    parallel_for_chunks(n, jobs, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            out[static_cast<std::size_t>(i)] = fn(i);
        }
    });
    return out;
}

}  // namespace mixcert

#endif
