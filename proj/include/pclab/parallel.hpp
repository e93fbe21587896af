#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace pclab {

// Worker count: PCLAB_THREADS if set and positive, else the OpenMP default.
int worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
// exception thrown by any iteration is rethrown on the calling thread after
// the loop; remaining iterations still run.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr first;
  std::mutex m;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace pclab
