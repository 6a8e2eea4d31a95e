#pragma once
// Minimal fork-join loop used by the per-individual hot paths. Callers must
// write only to disjoint slots; reductions happen after the join, in index
// order, so results do not depend on the thread count.

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace betis {

// Invokes body(begin, end) on contiguous chunks of [0, n) across at most
// `threads` workers. threads <= 1 runs inline.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        body(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(0, std::min(n, chunk));
    for (auto& t : pool) t.join();
}

}  // namespace betis
