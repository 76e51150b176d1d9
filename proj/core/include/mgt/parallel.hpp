#pragma once

#include <cstddef>
#include <functional>

namespace mgt {

/// Worker count for data-parallel mode loops. Reads MGT_THREADS (0 or unset means
/// hardware concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks; results
/// must be written to per-index slots so that any later reduction is order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 16);

}  // namespace mgt
