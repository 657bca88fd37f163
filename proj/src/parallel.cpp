#include <qgauge/parallel.hpp>

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qgauge {

int resolve_thread_count() {
  int workers = 0;
  if (const char* env = std::getenv("QGAUGE_THREADS")) {
    workers = std::atoi(env);
    if (workers < 0) workers = 0;
  }
  if (workers == 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers == 0) workers = 1;
  }
  return std::max(1, workers);
}

void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  const int workers =
      static_cast<int>(std::min<std::int64_t>(resolve_thread_count(), count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }

  struct Failure {
    std::int64_t index;
    std::exception_ptr error;
  };
  std::vector<Failure> failures(static_cast<std::size_t>(workers),
                                Failure{-1, nullptr});
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(count, lo + chunk);
    pool.emplace_back([lo, hi, w, &body, &failures] {
      for (std::int64_t i = lo; i < hi; ++i) {
        try {
          body(i);
        } catch (...) {
          failures[static_cast<std::size_t>(w)] = {i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  const Failure* first = nullptr;
  for (const auto& f : failures)
    if (f.error && (!first || f.index < first->index)) first = &f;
  if (first) std::rethrow_exception(first->error);
}

}  // namespace qgauge
