#include "hgsparse/common.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace hgsparse {

namespace {
std::atomic<int>& thread_count_slot() {
    static std::atomic<int> count{0};  // 0 = use hardware concurrency
    return count;
}
}  // namespace

int thread_count() {
    int c = thread_count_slot().load(std::memory_order_relaxed);
    if (c > 0) return c;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_thread_count(int count) { thread_count_slot().store(count, std::memory_order_relaxed); }

void parallel_for(Index n, const std::function<void(Index, Index)>& body) {
    if (n <= 0) return;
    const Index threads = std::min<Index>(thread_count(), n);
    if (threads <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const Index chunk = (n + threads - 1) / threads;
    for (Index t = 0; t < threads; ++t) {
        const Index lo = t * chunk;
        const Index hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace hgsparse
