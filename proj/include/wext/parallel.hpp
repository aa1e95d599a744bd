#pragma once

#include <cstddef>
#include <functional>

namespace wext {

/// Upper bound on worker threads used by parallel_for. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n). Each index is visited exactly once; callers
/// write per-index results and reduce sequentially, so output never depends
/// on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wext
