#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace cvqkd {

/// Worker count for grid kernels: OpenMP's default, capped by the
/// CVQKD_THREADS environment variable when it holds a positive integer.
int kernel_threads();

/// Runs body(i) for i in [0, count) across kernel_threads() OpenMP workers.
/// Results must be written to disjoint slots; the first exception thrown by
/// any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(kernel_threads())
    for (long long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

template <typename Body>
void serial_for(std::size_t count, Body&& body) {
    for (std::size_t i = 0; i < count; ++i) {
        body(i);
    }
}

}  // namespace cvqkd
