// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <functional>

namespace corrnoise {

// Runs fn(i) for every i in [0, count) across hardware threads.  fn must be
// safe to call concurrently for distinct indices; each index owns its output
// slot, so results are deterministic regardless of scheduling.  The first
// exception thrown by any fn is rethrown on the calling thread.
void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& fn);

}  // namespace corrnoise
