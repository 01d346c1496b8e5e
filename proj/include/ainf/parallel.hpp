#pragma once

#include <cstddef>
#include <functional>

namespace ainf {

/// Worker count from AINF_THREADS (default 1, capped at 64).
int thread_count();

/// Runs fn(0..n-1) on thread_count() threads. Results must be written to
/// per-index slots; the exception of the lowest failing index is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace ainf
