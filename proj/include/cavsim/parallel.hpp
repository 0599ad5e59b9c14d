#pragma once

#include <cstddef>
#include <functional>

namespace cavsim {

// Worker count for internally parallel operations. CAVSIM_THREADS caps it;
// 0 or unset means hardware concurrency.
int worker_count();

// Runs fn(0..n-1) across worker_count() threads in contiguous chunks. Results
// must be written to disjoint slots so the outcome is schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}
