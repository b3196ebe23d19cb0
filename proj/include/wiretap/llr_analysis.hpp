#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/ldpc.hpp"
#include "wiretap/modem.hpp"
#include "wiretap/montecarlo.hpp"

namespace wiretap {

struct LlrPartition {
    std::vector<double> correct;
    std::vector<double> error;
};

// Splits decoder-output LLRs by ground truth: sample i lands in `error`
// iff the hard decision disagrees with the transmitted bit.
inline LlrPartition partition_llrs(const std::vector<double>& llrs,
                                   const BitVec& decoded, const BitVec& truth) {
    if (llrs.size() != decoded.size() || decoded.size() != truth.size())
        throw std::invalid_argument("partition_llrs: length mismatch");
    LlrPartition p;
    for (std::size_t i = 0; i < llrs.size(); ++i) {
        if (decoded[i] != truth[i])
            p.error.push_back(llrs[i]);
        else
            p.correct.push_back(llrs[i]);
    }
    return p;
}

// Fixed-edge histogram; samples outside the range are clamped into the
// outer bins so the recorded mass stays complete.
class Histogram {
  public:
    Histogram(double lo, double hi, int bins) : lo_(lo), hi_(hi), counts_(bins, 0.0) {
        if (!(hi > lo) || bins < 1)
            throw std::invalid_argument("Histogram: invalid binning");
        width_ = (hi - lo) / bins;
    }

    void add(double x) {
        int b = static_cast<int>(std::floor((x - lo_) / width_));
        b = std::max(0, std::min(static_cast<int>(counts_.size()) - 1, b));
        counts_[static_cast<std::size_t>(b)] += 1.0;
        total_ += 1.0;
    }

    void add_all(const std::vector<double>& xs) {
        for (double x : xs) add(x);
    }

    int bins() const { return static_cast<int>(counts_.size()); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double bin_width() const { return width_; }
    double total() const { return total_; }
    const std::vector<double>& counts() const { return counts_; }

    bool same_binning(const Histogram& o) const {
        return lo_ == o.lo_ && hi_ == o.hi_ && counts_.size() == o.counts_.size();
    }

  private:
    double lo_, hi_, width_;
    double total_ = 0.0;
    std::vector<double> counts_;
};

// D(p||q) in bits over shared bins. Additive smoothing of 0.5 counts
// per bin keeps the ratio finite wherever p has mass and q does not.
inline double kl_divergence_bits(const Histogram& p, const Histogram& q) {
    if (!p.same_binning(q))
        throw std::invalid_argument("kl_divergence_bits: incompatible binning");
    constexpr double kSmooth = 0.5;
    const int nb = p.bins();
    const double ptot = p.total() + kSmooth * nb;
    const double qtot = q.total() + kSmooth * nb;
    if (p.total() <= 0.0 || q.total() <= 0.0)
        throw std::invalid_argument("kl_divergence_bits: empty histogram");
    double d = 0.0;
    for (int b = 0; b < nb; ++b) {
        const double pm = (p.counts()[static_cast<std::size_t>(b)] + kSmooth) / ptot;
        const double qm = (q.counts()[static_cast<std::size_t>(b)] + kSmooth) / qtot;
        d += pm * std::log2(pm / qm);
    }
    return d;
}

namespace detail {

// central quantile range of a sample multiset (order-insensitive)
inline std::pair<double, double> central_range(std::vector<double> v, double keep) {
    std::sort(v.begin(), v.end());
    const double cut = (1.0 - keep) / 2.0;
    const std::size_t n = v.size();
    std::size_t lo = static_cast<std::size_t>(cut * static_cast<double>(n));
    std::size_t hi = n - 1 - lo;
    if (lo >= hi) {
        lo = 0;
        hi = n - 1;
    }
    double a = v[lo], b = v[hi];
    if (!(b > a)) {
        a -= 0.5;
        b += 0.5;
    }
    return {a, b};
}

}  // namespace detail

inline constexpr int kKlHistogramBins = 101;
inline constexpr double kKlCentralMass = 0.999;

// Histogram-based divergence between correct-bit and error-bit LLR
// populations: 101 uniform bins spanning the central 99.9% of the
// pooled samples.
inline double kl_divergence_from_partition(const LlrPartition& part) {
    if (part.correct.empty() || part.error.empty())
        throw std::invalid_argument("kl_divergence_from_partition: degenerate partition");
    std::vector<double> pooled;
    pooled.reserve(part.correct.size() + part.error.size());
    pooled.insert(pooled.end(), part.correct.begin(), part.correct.end());
    pooled.insert(pooled.end(), part.error.begin(), part.error.end());
    const auto [lo, hi] = detail::central_range(std::move(pooled), kKlCentralMass);
    Histogram hp(lo, hi, kKlHistogramBins), hq(lo, hi, kKlHistogramBins);
    hp.add_all(part.correct);
    hq.add_all(part.error);
    return kl_divergence_bits(hp, hq);
}

// Plain LDPC(1056,880) over BPSK/AWGN exposing decoder-output soft
// information for the divergence sweep.
class LdpcAwgnScenario {
  public:
    explicit LdpcAwgnScenario(const LdpcCode* code, int max_iters = 50)
        : code_(code), max_iters_(max_iters) {}

    const LdpcCode& code() const { return *code_; }
    double rate() const { return code_->rate(); }

    struct SoftBlock {
        std::vector<double> llr;  // message positions
        BitVec decoded;
        BitVec truth;
    };

    SoftBlock collect_block(double snr_db, Rng& rng) const {
        const AwgnChannel ch = AwgnChannel::from_db(snr_db);
        const BitVec msg = random_bits(static_cast<std::size_t>(code_->k()), rng);
        const BitVec cw = code_->encode(msg);
        const auto y = transmit(ch, bpsk_modulate(cw), JammingProfile::none(), rng);
        const LdpcDecodeResult dec =
            code_->decode(bpsk_llr(y, ch.noise_var()), max_iters_);
        SoftBlock b;
        b.llr.assign(dec.llr.begin(), dec.llr.begin() + code_->k());
        b.decoded = dec.out.bits;
        b.truth = msg;
        return b;
    }

  private:
    const LdpcCode* code_;
    int max_iters_;
};

struct KlPoint {
    double x_db = 0.0;       // channel SNR
    double post_ber = 0.0;   // hard-decision BER at the decoder output
    double kl_bits = 0.0;    // D(p||q), correct vs error LLR populations
    long long correct_samples = 0;
    long long error_samples = 0;
    bool degenerate = false;  // all-correct or all-error point, KL skipped
};

// One (BER, KL) sample per grid value. Trials are distributed over
// workers but written into per-trial slots, so the pooled sample set
// (and any raw dump) is independent of scheduling.
template <class Scenario>
std::vector<KlPoint> kl_vs_ber_sweep(const Scenario& scen,
                                     const std::vector<double>& snr_grid_db,
                                     long long blocks_per_point, std::uint64_t seed,
                                     int workers = 0,
                                     std::vector<std::vector<double>>* raw_dump = nullptr) {
    std::vector<KlPoint> out;
    const int nw = resolve_workers(workers);
    for (std::size_t gi = 0; gi < snr_grid_db.size(); ++gi) {
        const double snr_db = snr_grid_db[gi];
        std::vector<typename Scenario::SoftBlock> blocks(
            static_cast<std::size_t>(blocks_per_point));
        auto work = [&](int w) {
            for (long long i = w; i < blocks_per_point; i += nw) {
                Rng rng = Rng::stream(seed, 0x4B4C5357ULL,
                                      static_cast<std::uint64_t>(gi),
                                      static_cast<std::uint64_t>(i));
                blocks[static_cast<std::size_t>(i)] = scen.collect_block(snr_db, rng);
            }
        };
        if (nw == 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (int w = 0; w < nw; ++w) threads.emplace_back(work, w);
            for (auto& th : threads) th.join();
        }

        LlrPartition part;
        long long errs = 0, bits = 0;
        for (const auto& b : blocks) {
            const LlrPartition p = partition_llrs(b.llr, b.decoded, b.truth);
            part.correct.insert(part.correct.end(), p.correct.begin(), p.correct.end());
            part.error.insert(part.error.end(), p.error.begin(), p.error.end());
            errs += static_cast<long long>(p.error.size());
            bits += static_cast<long long>(b.llr.size());
        }
        if (raw_dump) {
            std::vector<double> flat;
            flat.reserve(static_cast<std::size_t>(bits));
            for (const auto& b : blocks)
                flat.insert(flat.end(), b.llr.begin(), b.llr.end());
            raw_dump->push_back(std::move(flat));
        }

        KlPoint pt;
        pt.x_db = snr_db;
        pt.post_ber = bits > 0 ? static_cast<double>(errs) / bits : 0.0;
        pt.correct_samples = static_cast<long long>(part.correct.size());
        pt.error_samples = static_cast<long long>(part.error.size());
        if (part.correct.empty() || part.error.empty()) {
            pt.degenerate = true;
        } else {
            pt.kl_bits = kl_divergence_from_partition(part);
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace wiretap
