#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace latlin::detail {

/// Runs worker(i) for i in [0, n) and returns the worker's result for the
/// smallest i that produces one (workers return std::optional-like values).
/// With jobs > 1 the index space is split into contiguous chunks, each chunk
/// is scanned in order by its own thread, and the hit from the earliest chunk
/// wins, so the result is identical to the sequential scan.
template <class F>
auto first_hit(std::size_t n, unsigned jobs, F&& worker) -> decltype(worker(std::size_t{0})) {
    using R = decltype(worker(std::size_t{0}));
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            if (R r = worker(i)) return r;
        return R{};
    }
    const std::size_t w = std::min<std::size_t>(jobs, n);
    std::vector<R> results(w);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t c = 0; c < w; ++c) {
        const std::size_t lo = n * c / w, hi = n * (c + 1) / w;
        pool.emplace_back([&, lo, hi, c] {
            for (std::size_t i = lo; i < hi; ++i)
                if (R r = worker(i)) {
                    results[c] = std::move(r);
                    return;
                }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& r : results)
        if (r) return std::move(r);
    return R{};
}

}  // namespace latlin::detail
