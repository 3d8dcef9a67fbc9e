// Internal fork-join helper: runs fn(i) for i in [0, count) across a fixed
// worker pool. Callers write results into preallocated slots so output
// ordering never depends on scheduling.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace segeval::detail {

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned num_threads = 0) {
    if (count == 0) return;
    unsigned workers = num_threads ? num_threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace segeval::detail
