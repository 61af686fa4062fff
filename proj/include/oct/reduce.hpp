// Copyright 2026 The octodeg Authors
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

#ifndef OCT_REDUCE_HPP_
#define OCT_REDUCE_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace oct {

// Number of consecutive items accumulated by one worker before the partial
// result is committed. Fixing the chunk geometry (rather than dividing work
// by thread count) makes every reduction bit-identical for any --threads.
inline constexpr std::size_t kReduceChunk = 16384;

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

// Deterministic parallel reduction: item(i, acc) folds item i into a
// chunk-local accumulator; chunk results are combined sequentially in chunk
// order. Accum needs a default constructor and combine(const Accum&).
// The first exception thrown by any item is rethrown on the caller thread.
template <typename Accum, typename ItemFn>
Accum chunked_reduce(std::size_t n, ItemFn item, unsigned threads) {
    const std::size_t num_chunks = n == 0 ? 0 : (n - 1) / kReduceChunk + 1;
    std::vector<Accum> partial(num_chunks);

    std::atomic<std::size_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t c = next_chunk.fetch_add(1);
            if (c >= num_chunks || failed.load(std::memory_order_relaxed)) return;
            const std::size_t lo = c * kReduceChunk;
            const std::size_t hi = std::min(n, lo + kReduceChunk);
            try {
                Accum acc;
                for (std::size_t i = lo; i < hi; ++i) item(i, acc);
                partial[c] = acc;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    if (threads <= 1 || num_chunks <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const unsigned count = static_cast<unsigned>(
            std::min<std::size_t>(threads, num_chunks));
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(error);

    Accum total;
    for (const Accum& p : partial) total.combine(p);
    return total;
}

}  // namespace oct

#endif  // OCT_REDUCE_HPP_
