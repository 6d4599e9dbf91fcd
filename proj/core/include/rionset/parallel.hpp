#pragma once

#include <cstddef>
#include <functional>

namespace rionset {

// Name of the environment variable that sets the default worker count.
inline constexpr const char* kWorkersEnv = "RIONSET_WORKERS";

// requested > 0 wins; otherwise $RIONSET_WORKERS; otherwise the hardware
// concurrency (at least 1).
unsigned resolve_workers(unsigned requested = 0);

// Runs body(i) for i in [0, n) on `workers` threads. Items are claimed in
// contiguous chunks; the first exception thrown by any body is rethrown
// after all threads join.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace rionset
