#pragma once

#include <cstddef>
#include <functional>

namespace bellrecycle {

/// Worker count: BELL_RECYCLE_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs task(i) for i in [0, n) on up to worker_count() threads. Tasks must
/// write only to their own slot; results are assembled by index afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace bellrecycle
