#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace tvtomo {

/// Static block partition of [0, n) over `threads` workers; fn(begin, end, worker).
/// Partitioning is fixed by (n, threads), so results that reduce per-worker
/// buffers in worker order are deterministic for a given thread count.
template <class Fn>
void parallel_for_blocks(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  const int chunk = (n + threads - 1) / threads;
  for (int w = 1; w < threads; ++w) {
    const int begin = w * chunk, end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  fn(0, std::min(n, chunk), 0);
  for (auto& t : pool) t.join();
}

}  // namespace tvtomo
