#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chartml {

// Runs f(i) for i in [begin, end) across at most `jobs` worker threads.
// Tasks must be independent; callers own any result placement (typically
// writes into per-index slots, keeping output deterministic regardless of
// scheduling). The first thrown exception is rethrown on the caller thread.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, std::size_t jobs, F&& f) {
    if (begin >= end) return;
    const std::size_t n = end - begin;
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = begin; i < end; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= end) break;
            try {
                f(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> threads;
    const std::size_t count = std::min(jobs, n);
    threads.reserve(count);
    for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

inline std::size_t default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace chartml
