// parallel.hpp - index-parallel loop with a fixed result layout

#pragma once

#include <cstddef>
#include <functional>

namespace azhm {

// Name of the environment variable holding the worker count.
inline constexpr const char* kThreadsEnv = "AZHM_THREADS";

// AZHM_THREADS if set to a positive integer, else the hardware concurrency.
int default_threads();

// Calls body(i) for i in [0, n) on up to `threads` workers. Each index runs
// exactly once; the first exception thrown is rethrown after all workers
// stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

} // namespace azhm
