#include "blowup/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace blowup {

int thread_count() {
    static const int count = [] {
        if (const char* env = std::getenv("BLOWUPLAB_THREADS")) {
            int parsed = std::atoi(env);
            if (parsed >= 1) return parsed;
            return 1;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }();
    return count;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
    if (end <= begin) return;
    const std::size_t total = end - begin;
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), total);
    if (workers <= 1) {
        chunk_fn(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    const std::size_t chunk = (total + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
        std::size_t lo = begin + chunk * static_cast<std::size_t>(w);
        if (lo >= end) break;
        std::size_t hi = std::min(end, lo + chunk);
        pool.emplace_back([&chunk_fn, lo, hi] { chunk_fn(lo, hi); });
    }
    chunk_fn(begin, std::min(end, begin + chunk));
    for (auto& t : pool) t.join();
}

}  // namespace blowup
