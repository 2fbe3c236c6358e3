#ifndef DPPNET_PARALLEL_HPP
#define DPPNET_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace dppnet {

inline int& default_threads_ref() {
  static int n = static_cast<int>(std::thread::hardware_concurrency());
  return n;
}

inline int default_threads() {
  const int n = default_threads_ref();
  return n > 0 ? n : 1;
}

inline void set_default_threads(int n) { default_threads_ref() = n > 0 ? n : 1; }

// Runs fn(0..n_items) across workers. Callers must make the result
// deterministic by writing into slots indexed by item and reducing in index
// order afterwards.
inline void parallel_for(int n_items, const std::function<void(int)>& fn,
                         int threads = 0) {
  int t = threads > 0 ? threads : default_threads();
  t = std::min(t, n_items);
  if (t <= 1) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dppnet

#endif
