#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace emvt {

/// Execution knobs shared by every counting routine.
struct EngineConfig {
  unsigned threads = 1;
  std::uint64_t memory_budget_bytes = std::uint64_t{4} << 30;  // 4 GiB
  // Upper bound on Y^{2s} accepted by the brute-force oracle.
  std::uint64_t oracle_cap = 1'000'000'000;
};

/// Runs fn(i) for every i in [0, n) on up to `threads` workers.
///
/// Work items are claimed dynamically, so callers must write results into
/// per-index slots and combine them afterwards in index order; that keeps
/// every result independent of the worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, std::size_t{0});
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace emvt
