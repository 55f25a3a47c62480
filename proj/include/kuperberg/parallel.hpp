#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kup {

int default_threads();

// runs fn(k) for k in [0, n); each index is handled by exactly one worker,
// so per-index results are independent of the thread count
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    std::size_t nt = std::max(1, threads);
    nt = std::min(nt, std::max<std::size_t>(n, 1));
    if (nt <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t k = t; k < n; k += nt) fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace kup
