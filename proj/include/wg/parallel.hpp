#ifndef WG_PARALLEL_HPP
#define WG_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace wg {

/// Runs f(i) for i in [0, n). Each index is processed exactly once; callers
/// write results into per-index slots, so the outcome does not depend on the
/// thread count. nthreads == 0 picks the hardware concurrency.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned nthreads = 0) {
  if (nthreads == 0) nthreads = std::max(1u, std::thread::hardware_concurrency());
  if (nthreads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned nw = static_cast<unsigned>(std::min<std::size_t>(nthreads, n));
  pool.reserve(nw);
  for (unsigned t = 1; t < nw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

} // namespace wg

#endif
