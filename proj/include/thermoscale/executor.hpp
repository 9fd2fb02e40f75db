#pragma once

// Minimal fixed-size job runner. Each job writes into its own preallocated
// slot so results are ordered deterministically regardless of scheduling;
// the first exception wins and is rethrown on the caller's thread.

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "thermoscale/errors.hpp"

namespace thermoscale {

// fn(i) is invoked once for each i in [0, job_count) from up to `workers`
// threads. workers == 1 runs everything inline.
template <typename Fn>
void run_jobs(std::size_t job_count, unsigned workers, Fn&& fn) {
    if (workers == 0) throw ValidationError("run_jobs: workers must be >= 1");
    if (job_count == 0) return;
    if (workers == 1 || job_count == 1) {
        for (std::size_t i = 0; i < job_count; ++i) fn(i);
        return;
    }
    if (workers > job_count) workers = static_cast<unsigned>(job_count);

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= job_count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace thermoscale
