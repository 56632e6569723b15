#include "bpp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace bpp {

namespace {
int g_jobs = 1;
}

void set_parallelism(int jobs) { g_jobs = std::max(1, jobs); }

int parallelism() { return g_jobs; }

namespace {
thread_local bool tl_in_parallel = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int jobs = static_cast<int>(std::min<std::size_t>(g_jobs, n));
    if (jobs <= 1 || tl_in_parallel) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            tl_in_parallel = true;
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace bpp
