#pragma once

#include <cstdint>
#include <functional>

namespace gg {

// Runs f(i) for i in [0, n) across `workers` threads. Work items must be
// independent; callers get determinism by writing to index i of a
// preallocated buffer and reducing in fixed order afterwards.
void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& f);

int default_workers();

}  // namespace gg
