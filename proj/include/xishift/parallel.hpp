#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace xishift {

/// Runs fn(begin, end) over `jobs` contiguous blocks of [0, n). Blocks are
/// fixed by (n, jobs) alone, so results written by index are independent of
/// scheduling. The first exception thrown by any block is rethrown.
template <class Fn>
void parallel_blocks(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
  if (parts <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(parts);
  std::vector<std::thread> pool;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t b = n * p / parts, e = n * (p + 1) / parts;
    pool.emplace_back([&, p, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace xishift
