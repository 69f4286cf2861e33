#ifndef FRACLAN_PARALLEL_HPP
#define FRACLAN_PARALLEL_HPP

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fraclan {

// Runs body(i) for i in [0, count) across `workers` threads.  Work is split
// into fixed contiguous blocks, so any per-index output written to
// preallocated slots is identical for every worker count.
inline void parallel_for(int count, int workers, const std::function<void(int)>& body) {
    if (workers < 1) workers = 1;
    if (workers == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    if (workers > count) workers = count;
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const int lo = int(long(count) * w / workers);
        const int hi = int(long(count) * (w + 1) / workers);
        threads.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace fraclan

#endif
