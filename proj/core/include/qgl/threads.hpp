#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace qgl {

// Worker count: QGLNN_THREADS if set and positive, otherwise 1. Results must
// not depend on this value; parallel loops below partition work statically so
// aggregation order is deterministic.
inline int thread_count() {
    const char* env = std::getenv("QGLNN_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

// Runs fn(i) for i in [0, n) on thread_count() workers. Static block
// partition; fn must only write to its own slot of any shared output.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    int workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace qgl
