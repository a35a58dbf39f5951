#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace macwt {

// Runs fn(i) for i in [0, count). Work items must be independent and write
// only to their own slot so the result is identical for any job count.
template <typename Fn>
void parallel_for(std::int64_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  int workers = jobs;
  if (static_cast<std::int64_t>(workers) > count)
    workers = static_cast<int>(count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::int64_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace macwt
