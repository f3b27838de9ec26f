#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kondo {

/// Worker count for independent work units; 0 means hardware concurrency.
struct Execution {
  int threads = 1;

  int resolved() const noexcept {
    if (threads > 0) return threads;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
};

/// Calls fn(i) for i in [0, count). Each index is handled by exactly one
/// worker; results must be written to per-index slots so that reductions can
/// run afterwards in index order. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, const Execution& exec, Fn&& fn) {
  const auto workers =
      std::min<std::size_t>(static_cast<std::size_t>(exec.resolved()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kondo
