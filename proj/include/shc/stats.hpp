#pragma once

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "shc/rng.hpp"

namespace shc {

// Welford accumulator with exact merge, so chunked parallel runs aggregate
// to the same result regardless of worker count.
struct RunningStat {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const RunningStat& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const double d = o.mean - mean;
        const double nt = static_cast<double>(n + o.n);
        m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n)) / nt;
        mean += d * static_cast<double>(o.n) / nt;
        n += o.n;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_mean() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

// Runs `body(rng, count, acc)` over fixed-size chunks, one RngStream per
// chunk keyed by (seed, first_stream + chunk index). Chunk layout depends
// only on n_total, so results are identical for any worker count; partial
// accumulators are merged in chunk order.
template <typename Acc, typename Body>
Acc run_chunked(std::int64_t n_total, std::uint64_t seed, std::uint64_t first_stream,
                int workers, std::int64_t chunk_size, Body body) {
    if (chunk_size <= 0) chunk_size = 8192;
    const std::int64_t n_chunks = (n_total + chunk_size - 1) / chunk_size;
    std::vector<Acc> partial(static_cast<std::size_t>(n_chunks));

    auto work = [&](std::int64_t c0, std::int64_t stride) {
        for (std::int64_t c = c0; c < n_chunks; c += stride) {
            RngStream rng(seed, first_stream + static_cast<std::uint64_t>(c));
            const std::int64_t lo = c * chunk_size;
            const std::int64_t count = std::min(chunk_size, n_total - lo);
            body(rng, count, partial[static_cast<std::size_t>(c)]);
        }
    };

    if (workers <= 1 || n_chunks <= 1) {
        work(0, 1);
    } else {
        const int w = static_cast<int>(std::min<std::int64_t>(workers, n_chunks));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) pool.emplace_back(work, i, w);
        for (auto& t : pool) t.join();
    }

    Acc total{};
    for (const auto& p : partial) total.merge(p);
    return total;
}

} // namespace shc
