#ifndef COCYCLELAB_PARALLEL_HPP
#define COCYCLELAB_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cocyclelab {

/// Static block partition of [0,n) across `threads` workers.  Each index is
/// processed exactly once and results land in preallocated slots, so output
/// does not depend on the thread count.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n < 2048) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace cocyclelab

#endif
