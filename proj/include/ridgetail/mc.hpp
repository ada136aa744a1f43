#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ridgetail {

// Deterministic replication runner. Replications are grouped into chunks of
// fixed size; each chunk produces compensated partial sums of the per-rep
// outputs and their squares, and the partials are combined in chunk order.
// Chunk boundaries depend only on the replication index, so the result is
// bit-identical for any worker count.
struct McOptions {
    long reps = 100000;
    int threads = 0;  // <= 0: hardware concurrency
    long chunk = 4096;
};

struct McMoments {
    std::vector<double> mean;
    std::vector<double> se;  // standard error of the mean
    long reps = 0;
};

namespace detail {

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace detail

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// make_ws(): per-worker scratch object.
// fn(rep_index, ws, out): writes n_values doubles for one replication.
template <class MakeWs, class Fn>
McMoments run_mc(const McOptions& opt, int n_values, MakeWs&& make_ws, Fn&& fn) {
    if (opt.reps < 1) throw std::domain_error("run_mc: reps must be positive");
    const long n_chunks = (opt.reps + opt.chunk - 1) / opt.chunk;
    std::vector<double> part_sum(static_cast<std::size_t>(n_chunks) * n_values, 0.0);
    std::vector<double> part_sumsq(static_cast<std::size_t>(n_chunks) * n_values, 0.0);

    const int n_threads = static_cast<int>(std::min<long>(resolve_threads(opt.threads), n_chunks));
    std::atomic<long> next_chunk{0};

    auto worker = [&]() {
        auto ws = make_ws();
        std::vector<double> out(n_values);
        std::vector<detail::KahanSum> acc(n_values), acc2(n_values);
        for (;;) {
            const long k = next_chunk.fetch_add(1);
            if (k >= n_chunks) break;
            const long lo = k * opt.chunk;
            const long hi = std::min(opt.reps, lo + opt.chunk);
            for (auto& a : acc) a = {};
            for (auto& a : acc2) a = {};
            for (long rep = lo; rep < hi; ++rep) {
                fn(rep, ws, std::span<double>(out));
                for (int v = 0; v < n_values; ++v) {
                    acc[v].add(out[v]);
                    acc2[v].add(out[v] * out[v]);
                }
            }
            for (int v = 0; v < n_values; ++v) {
                part_sum[static_cast<std::size_t>(k) * n_values + v] = acc[v].s;
                part_sumsq[static_cast<std::size_t>(k) * n_values + v] = acc2[v].s;
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    McMoments res;
    res.reps = opt.reps;
    res.mean.resize(n_values);
    res.se.resize(n_values);
    const double r = static_cast<double>(opt.reps);
    for (int v = 0; v < n_values; ++v) {
        detail::KahanSum s1, s2;
        for (long k = 0; k < n_chunks; ++k) {
            s1.add(part_sum[static_cast<std::size_t>(k) * n_values + v]);
            s2.add(part_sumsq[static_cast<std::size_t>(k) * n_values + v]);
        }
        const double mean = s1.s / r;
        double var = 0.0;
        if (opt.reps > 1) var = std::max(0.0, (s2.s - r * mean * mean) / (r - 1.0));
        res.mean[v] = mean;
        res.se[v] = std::sqrt(var / r);
    }
    return res;
}

}  // namespace ridgetail
