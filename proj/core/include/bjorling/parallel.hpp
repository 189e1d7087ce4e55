// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bjorling {

/// Worker count from BJORLING_THREADS, else hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("BJORLING_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(i) for i in [0, n) over contiguous chunks. Each index is handled
/// by exactly one worker, so results written per index do not depend on the
/// worker count. The first exception thrown by any worker is rethrown.
template <typename F>
void parallel_for(std::size_t n, F&& f)
{
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            f(i);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) {
                        f(i);
                    }
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace bjorling
