#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mpl {

// Worker count: MATPRODLAB_THREADS if set to a positive integer, otherwise
// the hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("MATPRODLAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Calls f(i) for i in [0, n), spread over worker threads with dynamic
// scheduling. The first exception thrown by a worker is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t workers = 0) {
  if (workers == 0) workers = worker_count();
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mpl
