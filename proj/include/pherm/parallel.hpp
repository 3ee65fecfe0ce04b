#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pherm/error.hpp"

namespace pherm::detail {

/// Run body(i) for i in [0, count) on `workers` threads. Exceptions are
/// collected and the one with the smallest index is rethrown as SampleError.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::optional<std::size_t> failed_index;
  std::string failed_what;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard lock(mu);
        if (failed_index && *failed_index < i) return;
      }
      try {
        body(i);
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (!failed_index || i < *failed_index) {
          failed_index = i;
          failed_what = e.what();
        }
      }
    }
  };
  const std::size_t nthreads = std::min(workers, count);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed_index) throw SampleError(*failed_index, failed_what);
}

}  // namespace pherm::detail
