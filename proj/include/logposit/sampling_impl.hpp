#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace logposit {

template <typename Partial, typename Map, typename Reduce>
Partial blocked_reduce(std::uint64_t total, Map map, Reduce reduce, int threads,
                       std::uint64_t block_size) {
    const std::uint64_t blocks = total == 0 ? 0 : (total + block_size - 1) / block_size;
    std::vector<Partial> partials(blocks);

    const int workers = std::min<std::uint64_t>(std::max(resolve_thread_count(threads), 1), std::max<std::uint64_t>(blocks, 1));
    if (workers <= 1 || blocks <= 1) {
        for (std::uint64_t blk = 0; blk < blocks; ++blk) {
            partials[blk] = map(blk, blk * block_size, std::min(total, (blk + 1) * block_size));
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (std::uint64_t blk = next.fetch_add(1); blk < blocks; blk = next.fetch_add(1)) {
                partials[blk] = map(blk, blk * block_size, std::min(total, (blk + 1) * block_size));
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    Partial acc{};
    for (auto& p : partials) {
        reduce(acc, p);
    }
    return acc;
}

}  // namespace logposit
