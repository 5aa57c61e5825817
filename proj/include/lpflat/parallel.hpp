#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

namespace lpflat {

/// Every data-parallel kernel in the library has a serial reference path.
/// Both paths must produce identical results; the tests compare them.
enum class Execution { Serial, Parallel };

inline int worker_count() { return std::max(1, omp_get_max_threads()); }

/// Calls fn(i) for every i in [0, count). Exceptions thrown by fn are
/// rethrown on the calling thread (the lowest index wins).
template <class Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Smallest i in [0, count) with pred(i) true. The parallel path evaluates
/// batches concurrently and still returns the smallest index, so it agrees
/// with the serial scan whenever pred is a pure function of i.
template <class Pred>
std::optional<std::size_t> first_index_where(std::size_t count, Execution exec, Pred&& pred) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  const std::size_t batch = static_cast<std::size_t>(2 * worker_count());
  for (std::size_t start = 0; start < count; start += batch) {
    const std::size_t len = std::min(batch, count - start);
    std::vector<char> hit(len, 0);
    for_each_index(len, Execution::Parallel, [&](std::size_t k) { hit[k] = pred(start + k) ? 1 : 0; });
    for (std::size_t k = 0; k < len; ++k)
      if (hit[k]) return start + k;
  }
  return std::nullopt;
}

}  // namespace lpflat
