#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace winter {

/// Runs fn(i) for every i in [0, count) across hardware threads. Work items
/// must be independent and write results only through their own index, which
/// keeps assembly deterministic regardless of scheduling. Falls back to a
/// plain loop for small counts. The first exception thrown by any item is
/// rethrown after all threads join.
template <class F>
void parallel_for(std::size_t count, F&& fn, std::size_t min_per_thread = 64) {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    std::size_t n_threads = count / min_per_thread;
    if (n_threads > hw) n_threads = hw;
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_threads);
    const std::size_t chunk = count / n_threads;
    const std::size_t rest = count % n_threads;
    std::size_t begin = 0;
    for (std::size_t t = 0; t < n_threads; ++t) {
        const std::size_t end = begin + chunk + (t < rest ? 1 : 0);
        pool.emplace_back([&fn, &errors, t, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace winter
