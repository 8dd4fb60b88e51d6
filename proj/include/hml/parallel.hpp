#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hml {

// Maps a requested thread count to an effective one (<= 0 means "all cores").
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(i) for i in [0, count) on `threads` threads using a static block
// partition.  Results must be written to index-addressed storage inside f;
// with that discipline the outcome is identical for every thread count.
// The first exception thrown by any worker is rethrown on the caller.
template <class F>
void parallel_for_index(std::int64_t count, int threads, F&& f) {
  const int p = std::min<std::int64_t>(resolve_threads(threads), count);
  if (count <= 0) return;
  if (p <= 1) {
    for (std::int64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(p);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::int64_t chunk = (count + p - 1) / p;
  for (int w = 0; w < p; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hml
