// Copyright 2026 The qhc Authors
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

#ifndef QHC_PARALLEL_H
#define QHC_PARALLEL_H

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qhc {

/// 0 means "machine parallelism".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, count) into contiguous chunks, one per worker, and calls
/// body(chunk_index, begin, end). Chunk boundaries depend only on `count` and
/// the worker count, so callers that merge chunk results in chunk order get
/// schedule-independent output. Returns the number of chunks used.
template <typename Body>
std::size_t parallel_chunks(std::uint64_t count, unsigned threads, Body &&body) {
    unsigned workers = resolve_threads(threads);
    if (count < 1024 || workers == 1) {
        body(std::size_t{0}, std::uint64_t{0}, count);
        return 1;
    }
    std::uint64_t chunks = std::min<std::uint64_t>(workers, count);
    std::uint64_t per = (count + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(chunks);
    for (std::uint64_t c = 0; c < chunks; c++) {
        std::uint64_t begin = c * per;
        std::uint64_t end = std::min(count, begin + per);
        pool.emplace_back([&, c, begin, end] {
            try {
                body(static_cast<std::size_t>(c), begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return static_cast<std::size_t>(chunks);
}

/// Upper bound on the chunk count `parallel_chunks` will use.
inline std::size_t max_chunks(unsigned threads) {
    return resolve_threads(threads);
}

}  // namespace qhc

#endif
