#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace pairgen::numeric {

/// Runs body(begin, end) over a fixed contiguous partition of [0, n).
/// The partition depends only on (n, threads), so results that reduce
/// per-index values in index order are independent of scheduling.
inline void parallel_for_rows(size_t n, int threads, const std::function<void(size_t, size_t)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const size_t t = std::min<size_t>(static_cast<size_t>(threads), n ? n : 1);
    if (t <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (size_t k = 0; k < t; ++k) {
        const size_t begin = n * k / t;
        const size_t end = n * (k + 1) / t;
        pool.emplace_back([&, k, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace pairgen::numeric
