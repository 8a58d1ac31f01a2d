#include "mockrep/parallel.hpp"

#include <cstdlib>
#include <string>

#include <tbb/global_control.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>

namespace mockrep {

int worker_count() {
    static const int count = [] {
        const int hw = tbb::info::default_concurrency();
        if (const char* env = std::getenv("MOCKREP_THREADS")) {
            try {
                const int k = std::stoi(env);
                if (k >= 1) return k;
            } catch (const std::exception&) {
            }
        }
        return hw > 0 ? hw : 1;
    }();
    return count;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    static tbb::global_control limit(tbb::global_control::max_allowed_parallelism,
                                     static_cast<std::size_t>(worker_count()));
    if (worker_count() == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n), [&](const tbb::blocked_range<std::size_t>& r) {
        for (std::size_t i = r.begin(); i != r.end(); ++i) body(i);
    });
}

}  // namespace mockrep
