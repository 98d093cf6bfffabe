#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace fqgeom::detail {

/// Runs body(chunk, begin, end) over a partition of [0, n) into at most
/// `threads` contiguous chunks, chunk indices 0, 1, ... in order.
/// Chunk boundaries depend only on n and the thread count, and each
/// chunk owns a distinct index, so callers that keep per-chunk or
/// per-index output stay deterministic.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
    if (threads <= 1 || n <= 1) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t base = n / threads;
    const std::size_t extra = n % threads;
    std::size_t begin = 0;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t end = begin + base + (t < extra ? 1 : 0);
        pool.emplace_back([&body, t, begin, end] { body(std::size_t{t}, begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

}  // namespace fqgeom::detail
