#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rissim {

// Evaluates fn(chunk_index, first_sample, count) for every chunk_samples-
// sized block of [0, total) and returns the per-chunk results in chunk
// order. Chunk boundaries depend only on `total` and `chunk`, so reducing
// the returned vector front to back yields the same bits for any worker
// count.
template <typename Acc, typename Fn>
std::vector<Acc> for_each_chunk(std::uint64_t total, std::uint64_t chunk, int threads, Fn fn) {
    const std::uint64_t n_chunks = total == 0 ? 0 : (total + chunk - 1) / chunk;
    std::vector<Acc> results(n_chunks);
    if (n_chunks == 0) return results;

    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));

    auto run = [&](std::uint64_t c) {
        const std::uint64_t first = c * chunk;
        const std::uint64_t count = std::min(chunk, total - first);
        results[c] = fn(c, first, count);
    };

    if (workers <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run(c);
        return results;
    }

    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run(c);
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

} // namespace rissim
