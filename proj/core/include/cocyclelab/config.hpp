#ifndef COCYCLELAB_CONFIG_HPP
#define COCYCLELAB_CONFIG_HPP

#include <cstddef>

namespace cocyclelab {

/// Process-wide limits.  The capacity limit bounds dense table sizes
/// (|G|^p tuples times coefficient dimension); the thread count steers
/// data-parallel grid evaluation and never affects results.
std::size_t max_table_entries();
void set_max_table_entries(std::size_t n);

int thread_count();
void set_thread_count(int n);

/// Throws CapacityExceeded if a dense table of `entries` entries is too big.
void check_capacity(std::size_t entries, const char* what);

} // namespace cocyclelab

#endif
