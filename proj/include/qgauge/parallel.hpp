#pragma once

#include <cstdint>
#include <exception>
#include <functional>

namespace qgauge {

/// Worker count: QGAUGE_THREADS when set (0 or unset means hardware
/// concurrency), never below 1.
int resolve_thread_count();

/// Runs body(i) for i in [0, count) across worker threads with static
/// chunking. Per-index work must be independent; if several indices throw,
/// the exception from the smallest index is rethrown so failures do not
/// depend on scheduling.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& body);

}  // namespace qgauge
