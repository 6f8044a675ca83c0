#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rcg {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is claimed by
/// index, so results written to slot i are identical for any worker count.
/// The first exception thrown by any worker is rethrown here.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_lock;
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                const std::int64_t i = cursor.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock g(error_lock);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace rcg
