#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace envlab {

// Runs fn(i) for i in [0, count). Work items write to preallocated slots, so
// results are independent of scheduling. jobs <= 1 runs inline.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (jobs <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min(jobs, count);
    std::atomic<int> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline int default_jobs() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace envlab
