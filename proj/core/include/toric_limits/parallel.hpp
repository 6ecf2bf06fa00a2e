#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace toric_limits {

// Worker budget: TORIC_LIMITS_THREADS when set (>= 1), else the hardware
// concurrency.
inline int thread_budget() {
  if (const char* s = std::getenv("TORIC_LIMITS_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

// Runs fn(i) for every i in [0, n). Results must go into per-index slots so
// the outcome is independent of scheduling; reductions happen afterwards in
// index order.
template <class F>
void parallel_for(int n, F&& fn) {
  int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int k = 0; k < workers; ++k)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace toric_limits
