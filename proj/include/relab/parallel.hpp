#pragma once

#include <cstddef>
#include <functional>

namespace relab {

// Worker count from RELAB_THREADS, else hardware concurrency; always >= 1.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; the
// caller writes results into index-addressed slots so output order never
// depends on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace relab
