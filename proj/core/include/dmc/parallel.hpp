#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dmc {

inline unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(task, worker) for task in [0, tasks) on up to `threads` workers.
// The first exception thrown by any task is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t tasks, unsigned threads, Fn&& fn) {
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), tasks));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) fn(t, 0U);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&](unsigned worker) {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks) break;
            try {
                fn(t, worker);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dmc
