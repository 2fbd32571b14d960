#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace envcf {

// Chunked parallel index loop. fn(i) must only write state owned by index i;
// results are deterministic regardless of thread count. Small ranges run
// inline to avoid thread spawn cost.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t grain = 16384) {
    if (n == 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t want = (n + grain - 1) / grain;
    const std::size_t workers = std::min<std::size_t>(hw, want);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace envcf
