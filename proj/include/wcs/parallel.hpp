#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace wcs {

inline std::size_t thread_count() {
  const char* s = std::getenv("WCS_THREADS");
  if (!s) return 1;
  long k = std::strtol(s, nullptr, 10);
  if (k <= 0) return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<std::size_t>(k);
}

// runs f(i) for i in [0, n); results are written by index, so output order is schedule-independent
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  std::size_t t = std::min(thread_count(), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < t; ++k)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace wcs
