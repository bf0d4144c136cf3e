#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sinrg {

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls body(begin, end) on contiguous blocks of [0, n). Each index is
// processed exactly once; results must be written to per-index slots so the
// outcome does not depend on the number of workers.
template <class Body>
void parallel_blocks(std::size_t n, unsigned workers, Body&& body) {
  workers = resolve_workers(workers);
  if (n == 0) return;
  const std::size_t count = std::min<std::size_t>(workers, n);
  if (count <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(count);
  threads.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t begin = n * w / count;
    const std::size_t end = n * (w + 1) / count;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Splits rows [0, n) of an upper-triangular pair loop into `blocks`
// contiguous ranges with roughly equal pair counts. Returns blocks + 1 bounds.
inline std::vector<std::size_t> balanced_row_blocks(std::size_t n, std::size_t blocks) {
  blocks = std::max<std::size_t>(1, std::min(blocks, std::max<std::size_t>(n, 1)));
  std::vector<std::size_t> bounds(blocks + 1, n);
  bounds[0] = 0;
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
  std::size_t w = 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < n && w < blocks; ++i) {
    acc += static_cast<double>(n - i);
    if (acc >= pairs * static_cast<double>(w) / static_cast<double>(blocks)) bounds[w++] = i + 1;
  }
  return bounds;
}

template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  parallel_blocks(n, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace sinrg
