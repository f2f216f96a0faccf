#pragma once

#include <cstddef>
#include <functional>

namespace epiccbr {

// Process-wide worker cap, set once by the CLI (--threads). Default 1.
void set_num_threads(int n);
int num_threads();

// Run fn(begin, end) over a partition of [0, n). Each index is handled by
// exactly one worker and per-index work is self-contained, so results are
// bitwise identical for any thread count. Falls back to a plain call when
// the configured thread count is 1 or n is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace epiccbr
