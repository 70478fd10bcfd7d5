#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace pdgo {

/// Worker count used by the parallel helpers: the PDGO_THREADS environment
/// variable when set (clamped to >= 1), otherwise the hardware concurrency.
int thread_cap();

/// Runs fn(i) for i in [0, count) across up to thread_cap() threads. Indices
/// are striped over the workers; fn must be safe to call concurrently for
/// distinct i. The first exception thrown by any worker is rethrown.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace pdgo
