#include "bethelab/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace bethe {

void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    if (threads <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    const int workers = static_cast<int>(std::min<long>(threads, n));
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace bethe
