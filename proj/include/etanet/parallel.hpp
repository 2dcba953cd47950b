#ifndef ETANET_PARALLEL_HPP_
#define ETANET_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace etanet {

// Worker cap: ETANET_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
inline std::size_t worker_count() {
  if (const char* env = std::getenv("ETANET_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {
inline thread_local bool in_worker = false;
}

// Calls fn(i) for every i in [0, count) on up to worker_count() threads.
// Indices are claimed dynamically, so fn must only write to per-index state.
// The first exception thrown by any call is rethrown after all workers join.
// Calls made from inside a worker run serially.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t max_workers = worker_count()) {
  const std::size_t workers = detail::in_worker ? 1 : std::min(max_workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        detail::in_worker = true;
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace etanet

#endif  // ETANET_PARALLEL_HPP_
