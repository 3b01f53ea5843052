#pragma once

#include <cstddef>
#include <functional>

namespace tfbm {

/// Cap on worker threads used by the library (0 = hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, count), split into contiguous chunks across
/// workers. Bodies must only write state owned by their own index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tfbm
