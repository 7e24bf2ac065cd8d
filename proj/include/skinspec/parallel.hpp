#pragma once

#include <cstddef>
#include <functional>

namespace skinspec {

/// Worker count used when a caller passes threads = 0.
///
/// Reads SKINSPEC_THREADS (0 or unset means hardware concurrency).
[[nodiscard]] unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default_thread_count()).
///
/// Indices are handed out in contiguous blocks; body must only write to
/// slot i of its output so results do not depend on the schedule. The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace skinspec
