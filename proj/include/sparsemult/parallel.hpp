#ifndef SPARSEMULT_PARALLEL_HPP
#define SPARSEMULT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sparsemult {

// Worker count: SPARSEMULT_THREADS if set (>= 1), else hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("SPARSEMULT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, count).  Results must be written to
// per-index slots so that output does not depend on scheduling.  The
// first exception thrown by any worker is rethrown.
template <typename F>
void parallel_for(std::size_t count, F&& body) {
    unsigned workers = std::min<std::size_t>(thread_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sparsemult

#endif  // SPARSEMULT_PARALLEL_HPP
