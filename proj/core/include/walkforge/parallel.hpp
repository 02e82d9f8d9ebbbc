#pragma once

#include <cstddef>
#include <functional>

namespace walkforge {

/// Global worker-pool width used by mat_mul, apaw, ansc and the verify
/// driver. Defaults to WALKFORGE_THREADS or hardware concurrency.
unsigned thread_limit();
void set_thread_limit(unsigned n);

/// Splits [begin, end) into contiguous chunks, one worker thread per chunk.
/// fn(chunk_begin, chunk_end) must be safe to run concurrently on disjoint
/// ranges; results are deterministic because ranges never overlap.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace walkforge
