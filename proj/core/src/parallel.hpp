#ifndef SINGPOT_SRC_PARALLEL_HPP
#define SINGPOT_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace singpot::detail {

// Worker count: SINGPOT_THREADS overrides hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("SINGPOT_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs chunk(lo, hi) over a partition of [0, n); rethrows the first worker
// exception in the calling thread.
inline void parallel_for(int n, const std::function<void(int, int)>& chunk) {
  const int tc = std::min(thread_count(), n);
  if (tc <= 1) {
    if (n > 0) chunk(0, n);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr err;
  std::mutex err_mutex;
  const int per = (n + tc - 1) / tc;
  for (int t = 0; t < tc; ++t) {
    const int lo = t * per, hi = std::min(n, lo + per);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi] {
      try {
        chunk(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace singpot::detail

#endif  // SINGPOT_SRC_PARALLEL_HPP
