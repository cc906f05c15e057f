#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace pgl {

// Number of workers to use: explicit request, else hardware concurrency.
inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(chunk_index, lo, hi) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on n and chunk_size, never on the worker
// count, so per-chunk results can be reduced in chunk order to give output
// that is byte-identical for any --threads value.
inline void parallel_chunks(std::int64_t n, std::int64_t chunk_size, int threads,
                            const std::function<void(std::size_t, std::int64_t, std::int64_t)>& fn)
{
    if (n <= 0)
        return;
    chunk_size = std::max<std::int64_t>(1, chunk_size);
    const std::size_t n_chunks = static_cast<std::size_t>((n + chunk_size - 1) / chunk_size);
    threads = resolve_threads(threads);

    if (threads == 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::int64_t lo = static_cast<std::int64_t>(c) * chunk_size;
            fn(c, lo, std::min(n, lo + chunk_size));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks)
                return;
            std::int64_t lo = static_cast<std::int64_t>(c) * chunk_size;
            fn(c, lo, std::min(n, lo + chunk_size));
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<int>(threads, static_cast<int>(n_chunks));
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace pgl
