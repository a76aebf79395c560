#pragma once

#include <cstddef>
#include <functional>

namespace ipdw {

// Runs fn(i) for i in [0, n) over up to `threads` workers with static
// contiguous chunks. fn must only write to state owned by index i.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn);

} // namespace ipdw
