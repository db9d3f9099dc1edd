#pragma once

#include <cstddef>
#include <functional>

namespace qrs {

/// Worker count: QRS_THREADS when set, else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must
/// be written to disjoint slots; no ordering is guaranteed.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace qrs
