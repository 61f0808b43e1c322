#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ehl {

inline int default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [begin, end) on up to `jobs` threads. Each index is
// visited exactly once and fn must only write to index-owned slots, so results
// do not depend on the thread count or on completion order. The first
// exception thrown by a worker is rethrown on the calling thread.
template <class F>
void parallel_for(std::int64_t begin, std::int64_t end, int jobs, F&& fn) {
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  if (jobs <= 1 || count == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }

  const int workers = static_cast<int>(std::min<std::int64_t>(jobs, count));
  const std::int64_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;

  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = begin + w * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn, &first_error, &error_mutex] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ehl
