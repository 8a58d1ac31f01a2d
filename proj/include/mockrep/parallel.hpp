#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mockrep/quadrature.hpp"

namespace mockrep {

// Worker count: MOCKREP_THREADS when set (>= 1), else the hardware default.
int worker_count();

// Runs body(i) for i in [0, n) on the TBB pool capped at worker_count().
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// out[i] = fn(i), computed in parallel; the result is independent of the worker count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

// Deterministic parallel sum: terms computed in parallel, then summed pairwise in index order.
template <class T, class F>
T parallel_sum(std::size_t n, F&& fn) {
    return pairwise_sum(parallel_map<T>(n, std::forward<F>(fn)));
}

}  // namespace mockrep
