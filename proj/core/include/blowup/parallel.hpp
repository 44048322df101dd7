#pragma once

#include <cstddef>
#include <functional>

namespace blowup {

// Number of worker threads: BLOWUPLAB_THREADS if set (clamped to >= 1),
// otherwise std::thread::hardware_concurrency().
int thread_count();

// Splits [begin, end) into contiguous chunks, one per worker. Serial when a
// single worker is configured. Reductions must not rely on execution order;
// all reductions in this project use fixed-order serial sums instead.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& chunk_fn);

}  // namespace blowup
