#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fusioncat {

// Runs f(0..n-1) on `jobs` threads (jobs <= 1 runs inline).  Callers make the
// result deterministic by writing into pre-sized slots; no ordering of the
// calls themselves is promised.
inline void parallel_for(int jobs, size_t n, const std::function<void(size_t)>& f) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex errMu;
    int workers = std::min<size_t>(jobs, n);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(errMu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

inline int default_jobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : (int)hc;
}

}  // namespace fusioncat
