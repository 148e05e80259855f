#pragma once

#include <cstddef>
#include <functional>

namespace sinc {

/// Number of worker threads used by parallel_for. Defaults to the SINC_THREADS
/// environment variable, or the hardware concurrency when unset.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
/// possibly concurrently. The first exception thrown by a chunk is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace sinc
