#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace symdyn {

// Splits [0, count) into `workers` contiguous chunks and runs
// fn(begin, end, worker) on each. Chunk boundaries depend only on count and
// workers, so callers that write to disjoint ranges or per-worker slots and
// merge in worker order get results independent of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t count, int workers, Fn&& fn) {
  const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || count < 2 * w) {
    fn(std::size_t{0}, count, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> threads;
    threads.reserve(w);
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t begin = count * i / w;
      const std::size_t end = count * (i + 1) / w;
      threads.emplace_back([&, i, begin, end] {
        try {
          fn(begin, end, static_cast<int>(i));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace symdyn
