#pragma once

#include <cstddef>
#include <functional>

namespace symlat {

// Worker count used by parallel loops; 0 selects hardware concurrency.
void set_num_threads(unsigned threads);
unsigned num_threads();

// Calls body(i) for every i in [0, count) on up to num_threads() workers.
// Work items must write to disjoint outputs; reductions happen afterwards in index order.
// The first exception thrown by any item is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace symlat
