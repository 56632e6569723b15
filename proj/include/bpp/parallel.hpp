#pragma once

#include <cstddef>
#include <functional>

namespace bpp {

// Worker count for loop parallelism (1 = serial). Results never depend on it:
// every parallel loop writes to preassigned slots and reduces in index order.
void set_parallelism(int jobs);
int parallelism();

// Runs fn(i) for i in [0, n) across the worker pool.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bpp
