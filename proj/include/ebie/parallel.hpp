#pragma once
// Static-partition parallel loop. Thread count from EBIE_THREADS (default:
// hardware concurrency); partitioning is deterministic so reductions built
// on fixed index ranges are reproducible.

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ebie {

inline int thread_count()
{
    if (const char* env = std::getenv("EBIE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
}

inline void parallel_for(int n, const std::function<void(int)>& body)
{
    int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([=, &body] {
            for (int i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace ebie
