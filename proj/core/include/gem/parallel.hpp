#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace gem {

/// Chunked parallel loop over [0, n).  Each worker gets one contiguous
/// range, so writers to disjoint per-index data never race.  Results are
/// independent of the worker count as long as the body only touches its
/// own indices (no shared accumulators).
template <class Fn>
void parallel_for(std::int64_t n, int threads, Fn&& body) {
    if (n <= 0) return;
    int tc = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    tc = std::max(1, std::min<std::int64_t>(tc, n) > 0 ? std::min(tc, int(n)) : 1);
    if (tc == 1) {
        body(std::int64_t(0), n);
        return;
    }
    const std::int64_t chunk = (n + tc - 1) / tc;
    std::vector<std::thread> pool;
    pool.reserve(tc);
    for (int t = 0; t < tc; ++t) {
        const std::int64_t b = t * chunk;
        const std::int64_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace gem
