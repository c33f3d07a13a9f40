#pragma once

#include <cstddef>
#include <functional>

namespace qig {

// Worker count: the hardware concurrency (at least 1), capped by
// QIG_THREADS when that is set to a positive integer.
unsigned worker_count();

// Calls body(i) for i in [0, n), partitioned into contiguous chunks across
// worker_count() threads. Each index is visited exactly once; callers write
// results into per-index slots so the outcome does not depend on the
// partition. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Same with an explicit thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads);

}  // namespace qig
