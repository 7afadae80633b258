#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ffil {

// Runs fn(begin, end) over a partition of [0, count) on up to `jobs` threads.
// Callers own determinism: results must be written to disjoint, index-addressed
// slots so the outcome is independent of the schedule.
inline void parallel_chunks(std::size_t count, unsigned jobs,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (jobs <= 1 || count == 1) {
        fn(0, count);
        return;
    }
    std::size_t workers = std::min<std::size_t>(jobs, count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::size_t chunk = count / workers;
    std::size_t extra = count % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t len = chunk + (w < extra ? 1 : 0);
        std::size_t end = begin + len;
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& t : threads) t.join();
}

}  // namespace ffil
