#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "wiretap/metrics.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

// Per-block measurements. "pre" refers to the input of the outer
// (secrecy) decoder, "post" to its output over one S_b-bit block. A
// trial may carry several pre sub-blocks (e.g. two codewords feeding
// one S_b window).
struct BlockStats {
    int pre_blocks = 0;
    int pre_event_blocks = 0;  // sub-blocks with <= t errors
    long long pre_errors = 0;
    long long pre_bits = 0;
    int post_errors = 0;
    int post_bits = 0;
    int inner_failures = 0;
    int outer_failures = 0;
    long long iterations = 0;
    int decode_calls = 0;
};

struct PointTotals {
    long long trials = 0;
    long long pre_blocks = 0;
    long long pre_events = 0;
    std::vector<long long> post_events;  // one counter per delta
    long long pre_errors = 0;
    long long pre_bits = 0;
    long long post_errors = 0;
    long long post_bits = 0;
    long long inner_failures = 0;
    long long outer_failures = 0;
    long long iterations = 0;
    long long decode_calls = 0;

    void add(const BlockStats& b, const std::vector<int>& post_thresholds) {
        ++trials;
        pre_blocks += b.pre_blocks;
        pre_events += b.pre_event_blocks;
        pre_errors += b.pre_errors;
        pre_bits += b.pre_bits;
        post_errors += b.post_errors;
        post_bits += b.post_bits;
        inner_failures += b.inner_failures;
        outer_failures += b.outer_failures;
        iterations += b.iterations;
        decode_calls += b.decode_calls;
        for (std::size_t d = 0; d < post_thresholds.size(); ++d)
            if (b.post_errors > post_thresholds[d]) ++post_events[d];
    }

    void merge(const PointTotals& o) {
        trials += o.trials;
        pre_blocks += o.pre_blocks;
        pre_events += o.pre_events;
        pre_errors += o.pre_errors;
        pre_bits += o.pre_bits;
        post_errors += o.post_errors;
        post_bits += o.post_bits;
        inner_failures += o.inner_failures;
        outer_failures += o.outer_failures;
        iterations += o.iterations;
        decode_calls += o.decode_calls;
        for (std::size_t d = 0; d < post_events.size(); ++d)
            post_events[d] += o.post_events[d];
    }
};

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Fans `trials` across workers in contiguous chunks. Every trial draws
// from its own stream derived from (seed, salt, point_salt, trial), and
// all accumulation is integer, so the totals do not depend on the
// worker count or scheduling.
template <class Scenario>
PointTotals mc_point(const Scenario& scen, double snr_db, int t,
                     const std::vector<int>& post_thresholds, long long trials,
                     std::uint64_t seed, std::uint64_t point_salt, int workers) {
    const int nw = resolve_workers(workers);
    std::vector<PointTotals> partial(static_cast<std::size_t>(nw));
    for (auto& p : partial) p.post_events.assign(post_thresholds.size(), 0);

    auto work = [&](int w) {
        PointTotals& tot = partial[static_cast<std::size_t>(w)];
        for (long long i = w; i < trials; i += nw) {
            Rng rng = Rng::stream(seed, point_salt, static_cast<std::uint64_t>(i));
            const BlockStats b = scen.run_block(snr_db, t, rng);
            tot.add(b, post_thresholds);
        }
    };

    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(nw));
        for (int w = 0; w < nw; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }

    PointTotals total;
    total.post_events.assign(post_thresholds.size(), 0);
    for (const auto& p : partial) total.merge(p);
    return total;
}

}  // namespace wiretap
