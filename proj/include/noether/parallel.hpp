#pragma once

#include <cstddef>
#include <functional>

namespace noether {

/// Worker count: hardware concurrency, capped by the NOETHER_THREADS environment variable.
std::size_t thread_count();

/// Runs body(i) for i in [0, count); each index is visited exactly once.
/// Results must be written to per-index slots so the outcome is order-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace noether
