#pragma once

#include <cstddef>
#include <functional>

namespace mlob {

/// Worker count: MLOB_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] std::size_t default_threads();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
/// written to per-index slots; the first exception thrown is rethrown here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = default_threads());

}  // namespace mlob
