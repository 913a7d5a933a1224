#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmlab {

// Process-wide worker count. Results never depend on it: work is split into
// fixed chunks and partial results are combined in chunk order.
int worker_count();
void set_worker_count(int workers);

template <class F>
void parallel_for(size_t n_items, F&& fn) {
    const int w = worker_count();
    if (w <= 1 || n_items <= 1) {
        for (size_t i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n_items) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                next.store(n_items);
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    const size_t nt = std::min<size_t>(static_cast<size_t>(w), n_items);
    for (size_t t = 1; t < nt; ++t) threads.emplace_back(body);
    body();
    for (auto& t : threads) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace gmlab
