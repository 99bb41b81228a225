#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace irclab {

// Runs fn(i) for i in [0, n) across `workers` threads in contiguous index
// chunks. Callers store results by index, so the outcome is independent of
// the schedule.
inline void parallel_for(uint64_t n, int workers, const std::function<void(uint64_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const uint64_t w = static_cast<uint64_t>(workers);
    std::vector<std::thread> threads;
    threads.reserve(w);
    std::exception_ptr err;
    std::mutex err_mu;
    for (uint64_t t = 0; t < w; ++t) {
        const uint64_t lo = n * t / w, hi = n * (t + 1) / w;
        threads.emplace_back([&, lo, hi] {
            try {
                for (uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace irclab
