#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace hyperns {

/// Runs fn(lo, hi) over [begin, end) split into `threads` contiguous chunks. Chunks write
/// disjoint data, so results do not depend on the thread count. The first exception is rethrown.
template <typename Fn>
void parallel_for(long begin, long end, int threads, Fn&& fn) {
  const long n = end - begin;
  if (n <= 0) return;
  const int t = static_cast<int>(std::clamp<long>(threads, 1, n));
  if (t == 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    const long lo = begin + n * w / t, hi = begin + n * (w + 1) / t;
    pool.emplace_back([&, lo, hi, w] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hyperns
