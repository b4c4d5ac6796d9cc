#ifndef IDD_PARALLEL_HPP
#define IDD_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace idd {

// Process-wide default worker count. 0 means hardware concurrency.
void set_default_workers(unsigned n);
unsigned default_workers();

// Runs fn(begin, end) on contiguous chunks of [0, n) across up to `workers`
// threads (0 = default). Chunk boundaries depend only on n and the resolved
// worker count, so any per-chunk RNG seeded by chunk index is reproducible.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned workers = 0);

} // namespace idd

#endif
