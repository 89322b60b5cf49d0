#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace freemult {

/// Worker count from FREEMULT_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once and
/// callers write into pre-sized slots, so results never depend on the
/// number of workers. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace freemult
