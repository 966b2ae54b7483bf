#pragma once

#include <cstddef>
#include <functional>

namespace tctl::detail {

// Runs fn(i) for i in [0, count). Independent per-slice work items may run
// on multiple threads; each item writes only its own output slot, so results
// are assembled in deterministic slice order either way. The thread count is
// capped by the TCTL_THREADS environment variable (1 disables threading).
void parallel_for_slices(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tctl::detail
