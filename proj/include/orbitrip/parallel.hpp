#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace orbitrip {

/// Worker count used by the parallel helpers: an explicit request wins,
/// otherwise the ORBIT_RIP_THREADS environment variable, otherwise the
/// hardware concurrency.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ORBIT_RIP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs body(begin, end) over contiguous chunks of [0, count). Chunking
/// depends only on (count, threads); callers get determinism by writing to
/// disjoint, index-addressed slots. The first worker exception is rethrown.
inline void parallel_for_chunks(
    std::int64_t count, int threads,
    const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (count <= 0) return;
  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), count));
  if (nthreads == 1) {
    body(0, count);
    return;
  }
  const std::int64_t chunk = (count + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    const std::int64_t begin = static_cast<std::int64_t>(t) * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace orbitrip
