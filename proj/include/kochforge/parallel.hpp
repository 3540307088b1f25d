#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace kochforge {

/// Worker cap: KOCHFORGE_THREADS when set (minimum 1), otherwise the
/// hardware concurrency (minimum 1).
inline int worker_count() {
    if (const char* env = std::getenv("KOCHFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(begin, end, chunk) over a partition of [0, n) into contiguous
/// chunks, one worker thread each. Chunk indices are dense and ordered, so
/// per-chunk results can be reduced in a fixed order afterwards, keeping
/// parallel reductions schedule-independent. fn must not throw.
template <class Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        fn(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t c = 0; c < workers; ++c) {
        std::size_t b = n * c / workers;
        std::size_t e = n * (c + 1) / workers;
        pool.emplace_back([&fn, b, e, c] { fn(b, e, c); });
    }
    for (std::thread& t : pool) t.join();
}

} // namespace kochforge
