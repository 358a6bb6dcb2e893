#pragma once

#include <exception>
#include <mutex>

namespace k3pq {

// Runs body(i) for i in [0, count) across OpenMP threads; the first
// exception thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(long count, Body&& body) {
    std::exception_ptr error;
    std::mutex lock;
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> g(lock);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

// Set the OpenMP worker count; k <= 0 keeps the runtime default.
void set_worker_count(int k);

}  // namespace k3pq
