#pragma once

#include <cstddef>
#include <functional>

namespace cascade {

// CASCADE_THREADS env var, else hardware concurrency.
int default_thread_count();

// Index-sharded loop. fn(i) must touch only slot i of its output, so results
// are independent of the schedule and identical for every thread count.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace cascade
