#pragma once

#include <cstddef>
#include <functional>

namespace volterra {

/// Worker count: VOLTERRA_HELIX_THREADS if set (0 = auto), else the
/// hardware concurrency. Read on every call so tests can vary it.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across the worker threads. Each index is
/// processed exactly once; bodies must write only to their own slot, which
/// makes the result independent of the schedule. Exceptions are rethrown
/// on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace volterra
