#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace lorentz {

// Runs fn(i) for i in [0, n) across OpenMP threads. If any call throws, the
// exception from the lowest index is rethrown after the loop, so failures are
// reported identically for every thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::exception_ptr first;
  std::size_t first_index = n;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(lorentz_parallel_for_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first = std::current_exception();
        }
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

// out[i] = fn(i), computed in parallel; reductions over `out` are left to the
// caller so they run in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

inline int worker_count() { return omp_get_max_threads(); }

}  // namespace lorentz
