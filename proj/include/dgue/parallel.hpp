#pragma once

#include <cstddef>
#include <functional>

namespace dgue {

/// Number of worker threads used when a caller passes threads = 0.
/// Defaults to std::thread::hardware_concurrency().
unsigned default_thread_count();
void set_default_thread_count(unsigned threads);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Indices are handed out in contiguous blocks; callers write results into
/// per-index slots so the outcome does not depend on the schedule.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace dgue
