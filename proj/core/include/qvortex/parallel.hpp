#pragma once

#include <cstddef>
#include <functional>

namespace qvortex {

/// Worker count: QVORTEX_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once; results written to per-index slots are independent of
/// the thread count. The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qvortex
