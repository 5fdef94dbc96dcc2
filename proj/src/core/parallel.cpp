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

#include "core/parallel.h"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "core/errors.h"

namespace mixcert {

void parallel_for_chunks(std::int64_t n, int jobs,
                         const std::function<void(std::int64_t, std::int64_t)>& body) {
    if (n < 0) {
        throw ArgumentError("parallel_for_chunks needs n >= 0");
    }
    if (n == 0) {
        return;
    }
    if (jobs < 1) {
        jobs = 1;
    }
    if (jobs == 1 || n == 1) {
        body(0, n);
        return;
    }

    // Chunk size depends only on n, never on jobs; units are typically whole
    // trials, so even small chunks stay well above scheduling overhead.
    const std::int64_t chunk = std::max<std::int64_t>(1, std::min<std::int64_t>(1024, n / 16));
    const std::int64_t num_chunks = (n + chunk - 1) / chunk;

    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= num_chunks) {
                return;
            }
            const std::int64_t begin = c * chunk;
            const std::int64_t end = std::min(n, begin + chunk);
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(num_chunks);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const int num_threads = static_cast<int>(std::min<std::int64_t>(jobs, num_chunks));
    pool.reserve(static_cast<std::size_t>(num_threads));
    for (int i = 0; i < num_threads; ++i) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace mixcert
