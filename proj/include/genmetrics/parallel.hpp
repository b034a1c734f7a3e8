#pragma once

#include <cstddef>
#include <functional>

namespace genmetrics {

// Worker count: hardware concurrency, capped by GENMETRICS_THREADS when set.
std::size_t worker_count();

// Runs body(begin, end) over contiguous blocks of [0, n). Blocks are disjoint,
// so bodies that write only their own rows produce results independent of the
// worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace genmetrics
