#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sc {

// fn(i) for i in [0, count) on a small worker pool; results must be written to
// slot i by the caller so the output order never depends on scheduling.
// The first exception thrown by any task is rethrown here.
inline void parallel_for(int count, const std::function<void(int)>& fn, int workers = 0)
{
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, std::max(count, 1));
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex m;
    auto run = [&] {
        for (int i; (i = next++) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(m);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace sc
