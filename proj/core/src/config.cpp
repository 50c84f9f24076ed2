#include "cocyclelab/config.hpp"

#include <atomic>
#include <string>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {
std::atomic<std::size_t> g_max_entries{1u << 24};
std::atomic<int> g_threads{1};
} // namespace

std::size_t max_table_entries() { return g_max_entries.load(); }
void set_max_table_entries(std::size_t n) { g_max_entries.store(n ? n : 1); }

int thread_count() { return g_threads.load(); }
void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }

void check_capacity(std::size_t entries, const char* what) {
    if (entries > max_table_entries())
        throw CapacityExceeded(std::string(what) + " needs " + std::to_string(entries) +
                               " entries, limit " + std::to_string(max_table_entries()));
}

} // namespace cocyclelab
