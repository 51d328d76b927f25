#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <thread>
#include <vector>

namespace skein {

// Worker count: explicit request, else SKEIN_THREADS, else the core count.
int worker_count(int requested = 0);
// Evaluation cap: SKEIN_BUDGET or 1e8.
std::uint64_t default_budget();
// SKEIN_PRECISION_BITS or 0 (automatic).
int default_precision_bits();

// Runs f(i) for i in [0, n) on up to `threads` workers. Results come back in
// index order, so reductions over them do not depend on the thread count.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, int threads, F f) {
  std::vector<R> out(n);
  int workers = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(worker_count(threads))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace skein
