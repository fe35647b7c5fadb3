#pragma once

#include <cstddef>
#include <functional>

namespace zml {

/// Process-wide worker count used by every parallel loop. 0 selects
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for every i in [0, n). Work is handed out in fixed-size
/// chunks; results must be written to per-index slots so the outcome is
/// independent of scheduling. If several calls throw, the exception from
/// the lowest index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t chunk = 1);

}  // namespace zml
