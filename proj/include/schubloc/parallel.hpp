#ifndef SCHUBLOC_PARALLEL_HPP
#define SCHUBLOC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace schubloc {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Work is handed out by an
// atomic counter, so callers must write results into slot i only. If several
// indices throw, the exception of the smallest index is rethrown, keeping
// failures independent of scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace schubloc

#endif  // SCHUBLOC_PARALLEL_HPP
