#pragma once

#include <cstddef>
#include <functional>

namespace currentkit {

// Worker count for internal parallel loops.  0 selects the hardware
// concurrency.  Results never depend on the count; loops write to
// preallocated slots indexed by iteration.
void set_worker_threads(int n);
int worker_threads();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace currentkit
