#pragma once

#include <cstddef>
#include <functional>

namespace ofdmrad {

// Maps 0 to std::thread::hardware_concurrency(), clamps to >= 1.
int resolve_threads(int requested);

// Runs body(i) for i = 0..count-1, on up to `threads` worker threads.
// Iterations must be independent; the first exception thrown by any
// iteration is rethrown on the caller after all workers join.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace ofdmrad
