// parallelism.hpp: ordered parallel-for over independent work items

#pragma once

#include <cstddef>
#include <functional>

namespace wqed {

/// Worker count: WQED_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. fn must only
/// write to per-index state. The first exception thrown by any fn is rethrown
/// after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace wqed
