#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "wordmap/common.hpp"

namespace wordmap {

/// Worker count: explicit request > WORDMAP_THREADS env > hardware concurrency.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WORDMAP_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

/// Runs fn(chunk_index, begin, end) over a fixed chunking of [0, n).
/// The chunk layout depends only on n and chunk_count, never on scheduling,
/// so per-chunk results can be merged in chunk order deterministically.
template <class Fn>
void parallel_chunks(u64 n, int threads, int chunk_count, Fn&& fn) {
    threads = resolve_threads(threads);
    if (chunk_count <= 0) chunk_count = threads;
    if (n == 0) return;
    if (u64(chunk_count) > n) chunk_count = int(n);

    auto chunk_bounds = [&](int c) {
        u64 begin = n * u64(c) / u64(chunk_count);
        u64 end = n * u64(c + 1) / u64(chunk_count);
        return std::pair<u64, u64>(begin, end);
    };

    if (threads <= 1 || chunk_count == 1) {
        for (int c = 0; c < chunk_count; ++c) {
            auto [b, e] = chunk_bounds(c);
            fn(c, b, e);
        }
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int c = next.fetch_add(1);
                if (c >= chunk_count) return;
                auto [b, e] = chunk_bounds(c);
                fn(c, b, e);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace wordmap
