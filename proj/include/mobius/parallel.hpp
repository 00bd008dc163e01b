#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace mobius {

/// Static block split of [0, n) over hardware threads.  Work items must be
/// independent; result placement must not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t nthreads = std::min(hw, n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = n * t / nthreads;
        const std::size_t hi = n * (t + 1) / nthreads;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace mobius
