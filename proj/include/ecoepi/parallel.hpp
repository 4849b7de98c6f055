#pragma once
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ecoepi {

// Worker count resolution: explicit request > ECOEPI_THREADS > hardware.
inline int worker_count(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ECOEPI_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Static block partition of [0, n): deterministic result placement regardless
// of worker count — each index is computed by exactly one worker and written
// to its own slot.
inline void parallel_for(long n, int workers, const std::function<void(long)>& body) {
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  const int nw = static_cast<int>(std::min<long>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < nw; ++w) {
    const long lo = n * w / nw, hi = n * (w + 1) / nw;
    pool.emplace_back([lo, hi, &body, &first_error, &error_mutex] {
      try {
        for (long i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ecoepi
