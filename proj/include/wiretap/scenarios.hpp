#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wiretap/bch.hpp"
#include "wiretap/channel.hpp"
#include "wiretap/interleaver.hpp"
#include "wiretap/ldpc.hpp"
#include "wiretap/modem.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/scrambler.hpp"

namespace wiretap {

// --- scenario chains -------------------------------------------------------

// Uncoded BPSK over AWGN; "pre" measurements are the raw channel errors
// over one block_bits-sized word (no inner code in front of the outer
// decoder, and there is no outer decoder output to measure).
class UncodedBpskScenario {
  public:
    explicit UncodedBpskScenario(int block_bits) : block_bits_(block_bits) {}

    double rate() const { return 1.0; }
    int sb() const { return 0; }
    int pre_block_bits() const { return block_bits_; }
    double snr_db_for(Axis axis, double x) const {
        return axis == Axis::SnrDb ? x : ebno_to_snr_db(x, rate());
    }

    BlockStats run_block(double snr_db, int t, Rng& rng) const {
        const AwgnChannel ch = AwgnChannel::from_db(snr_db);
        const BitVec bits = random_bits(static_cast<std::size_t>(block_bits_), rng);
        const auto y = transmit(ch, bpsk_modulate(bits), JammingProfile::none(), rng);
        const BitVec hard = bpsk_hard_decide(y);
        const int errs = static_cast<int>(hamming_distance(bits, hard));
        BlockStats b;
        b.pre_blocks = 1;
        b.pre_event_blocks = errs <= t;
        b.pre_errors = errs;
        b.pre_bits = block_bits_;
        return b;
    }

  private:
    int block_bits_;
};

// Synthetic iid bit flips with a fixed crossover probability; bypasses
// modulation and coding entirely. Oracle companion of the exact
// binomial form of the BER-CDF^ac.
class IidFlipScenario {
  public:
    IidFlipScenario(int s_b, double p) : s_b_(s_b), p_(p) {}

    double rate() const { return 1.0; }
    int sb() const { return s_b_; }
    int pre_block_bits() const { return s_b_; }
    double snr_db_for(Axis, double) const { return 0.0; }  // axis unused

    BlockStats run_block(double, int t, Rng& rng) const {
        int errs = 0;
        for (int i = 0; i < s_b_; ++i) errs += rng.bernoulli(p_);
        BlockStats b;
        b.pre_blocks = 1;
        b.pre_event_blocks = errs <= t;
        b.pre_errors = errs;
        b.pre_bits = s_b_;
        b.post_errors = errs;
        b.post_bits = s_b_;
        return b;
    }

  private:
    int s_b_;
    double p_;
};

// Scrambler outer code over a BCH(127,64) inner code, BPSK/AWGN.
// "pre" compares the BCH decoder output against the transmitted
// scrambled message; "post" compares the descrambled estimate against
// the message. S_b may span several consecutive codewords.
class ScramblerBchScenario {
  public:
    ScramblerBchScenario(std::uint64_t scrambler_seed, int blocks_per_sb = 1)
        : bch_(7, 10), blocks_per_sb_(blocks_per_sb) {
        Rng rng = Rng::stream(scrambler_seed, 0x5C4AB1E5ULL);
        scrambler_.emplace(
            Scrambler::random(static_cast<std::size_t>(bch_.k()), rng));
    }

    const BchCode& bch() const { return bch_; }
    double rate() const { return static_cast<double>(bch_.k()) / bch_.n(); }
    int sb() const { return blocks_per_sb_ * bch_.k(); }
    int pre_block_bits() const { return bch_.k(); }
    double snr_db_for(Axis axis, double x) const {
        return axis == Axis::SnrDb ? x : ebno_to_snr_db(x, rate());
    }

    BlockStats run_block(double snr_db, int t, Rng& rng) const {
        const AwgnChannel ch = AwgnChannel::from_db(snr_db);
        BlockStats b;
        for (int j = 0; j < blocks_per_sb_; ++j) {
            const BitVec msg = random_bits(static_cast<std::size_t>(bch_.k()), rng);
            const BitVec scrambled = scrambler_->scramble(msg);
            const BitVec cw = bch_.encode(scrambled);
            const auto y =
                transmit(ch, bpsk_modulate(cw), JammingProfile::none(), rng);
            const DecodeOutcome dec = bch_.decode(bpsk_hard_decide(y));
            const BitVec descrambled = scrambler_->descramble(dec.bits);
            const int pre = static_cast<int>(hamming_distance(dec.bits, scrambled));
            const int post = static_cast<int>(hamming_distance(descrambled, msg));
            b.pre_blocks += 1;
            b.pre_event_blocks += pre <= t;
            b.pre_errors += pre;
            b.pre_bits += bch_.k();
            b.post_errors += post;
            b.post_bits += bch_.k();
            b.outer_failures += !dec.success;
            b.decode_calls += 1;
        }
        return b;
    }

  private:
    BchCode bch_;
    std::optional<Scrambler> scrambler_;
    int blocks_per_sb_;
};

// BCH(127,92) as the outer code with L-ary DPSK over AWGN; each trial
// carries two codewords so S_b = 184 message bits map onto a whole
// number of quaternary symbols. Demodulation is hard-decision
// differential detection feeding bounded-distance BCH decoding.
class DpskBchScenario {
  public:
    explicit DpskBchScenario(int order) : bch_(7, 5), mod_(ModScheme::dpsk(order)) {}

    const BchCode& bch() const { return bch_; }
    double rate() const { return static_cast<double>(bch_.k()) / bch_.n(); }
    int sb() const { return 2 * bch_.k(); }  // 184
    int pre_block_bits() const { return bch_.n(); }
    double snr_db_for(Axis axis, double x) const {
        if (axis == Axis::SnrDb) return x;
        // Es/N0 = R * log2(L) * Eb/N0 for unit-energy symbols
        return x + 10.0 * std::log10(rate() * mod_.bits_per_symbol());
    }

    BlockStats run_block(double snr_db, int t, Rng& rng) const {
        const AwgnChannel ch = AwgnChannel::from_db(snr_db);
        BitVec coded;
        coded.reserve(2 * static_cast<std::size_t>(bch_.n()));
        std::vector<BitVec> msgs(2);
        for (auto& m : msgs) {
            m = random_bits(static_cast<std::size_t>(bch_.k()), rng);
            const BitVec cw = bch_.encode(m);
            coded.insert(coded.end(), cw.begin(), cw.end());
        }
        const auto sym = dpsk_modulate(coded, mod_.order);
        const auto y = transmit(ch, sym, JammingProfile::none(), rng);
        const BitVec demod = dpsk_demodulate(y, mod_.order);

        BlockStats b;
        b.pre_errors = static_cast<long long>(hamming_distance(coded, demod));
        b.pre_bits = 2 * bch_.n();
        for (int j = 0; j < 2; ++j) {
            const BitVec word(demod.begin() + j * bch_.n(),
                              demod.begin() + (j + 1) * bch_.n());
            const int werr = static_cast<int>(hamming_distance(
                word, BitVec(coded.begin() + j * bch_.n(),
                             coded.begin() + (j + 1) * bch_.n())));
            b.pre_blocks += 1;
            b.pre_event_blocks += werr <= t;
            const DecodeOutcome dec = bch_.decode(word);
            b.post_errors += static_cast<int>(hamming_distance(dec.bits, msgs[static_cast<std::size_t>(j)]));
            b.post_bits += bch_.k();
            b.outer_failures += !dec.success;
            b.decode_calls += 1;
        }
        return b;
    }

  private:
    BchCode bch_;
    ModScheme mod_;
};

// The concatenated jamming scheme: a fresh 64-bit key interleaves 753
// message bits; the key is BCH(127,64)-encoded and prepended, the
// 880-bit block is LDPC(1056,880)-encoded, and the 127 key-codeword
// symbols are jammed with power alpha. "pre" counts errors on the key
// codeword at the LDPC decoder output (the BCH decoder input); "post"
// counts errors over the 753 deinterleaved message bits.
class KeyedJammingScenario {
  public:
    static constexpr int kKeyBits = 64;
    static constexpr int kKeyCodeword = 127;
    static constexpr int kMessageBits = 753;

    KeyedJammingScenario(const LdpcCode* ldpc, double alpha, int max_iters = 50)
        : ldpc_(ldpc), bch_(7, 10), alpha_(alpha), max_iters_(max_iters) {
        if (ldpc_->k() != kKeyCodeword + kMessageBits)
            throw std::invalid_argument(
                "KeyedJammingScenario: key + message bits must fill the LDPC "
                "dimension");
    }

    double alpha() const { return alpha_; }
    double rate() const { return ldpc_->rate(); }  // 880/1056
    int sb() const { return kMessageBits; }
    int pre_block_bits() const { return kKeyCodeword; }
    double snr_db_for(Axis axis, double x) const {
        return axis == Axis::SnrDb ? x : ebno_to_snr_db(x, rate());
    }

    BlockStats run_block(double snr_db, int t, Rng& rng) const {
        const AwgnChannel ch = AwgnChannel::from_db(snr_db);

        const BitVec key = random_bits(kKeyBits, rng);
        const BitVec key_cw = bch_.encode(key);
        const BitVec msg = random_bits(kMessageBits, rng);
        const KeyedInterleaver il(key, kMessageBits);
        const BitVec msg_il = il.interleave(msg);

        BitVec inner(static_cast<std::size_t>(ldpc_->k()));
        std::copy(key_cw.begin(), key_cw.end(), inner.begin());
        std::copy(msg_il.begin(), msg_il.end(), inner.begin() + kKeyCodeword);
        const BitVec cw = ldpc_->encode(inner);

        const JammingProfile jam =
            JammingProfile::on_range(alpha_, 0, kKeyCodeword);
        const auto y = transmit(ch, bpsk_modulate(cw), jam, rng);

        // the receiver knows which symbols are jammed and scales those
        // LLRs by the effective noise variance
        const double nv = ch.noise_var();
        const double nv_jam = effective_noise_var(ch, alpha_);
        std::vector<double> llr(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            llr[i] = 2.0 * y[i] / (i < kKeyCodeword ? nv_jam : nv);

        const LdpcDecodeResult dec = ldpc_->decode(llr, max_iters_);

        BlockStats b;
        const BitVec key_cw_hat(dec.out.bits.begin(),
                                dec.out.bits.begin() + kKeyCodeword);
        const int pre = static_cast<int>(hamming_distance(key_cw_hat, key_cw));
        b.pre_blocks = 1;
        b.pre_event_blocks = pre <= t;
        b.pre_errors = pre;
        b.pre_bits = kKeyCodeword;
        b.inner_failures = !dec.out.success;
        b.iterations = dec.out.iterations;
        b.decode_calls = 1;

        const DecodeOutcome key_dec = bch_.decode(key_cw_hat);
        b.outer_failures = !key_dec.success;
        const KeyedInterleaver il_hat(key_dec.bits, kMessageBits);
        const BitVec msg_hat = il_hat.deinterleave(
            BitVec(dec.out.bits.begin() + kKeyCodeword, dec.out.bits.end()));
        b.post_errors = static_cast<int>(hamming_distance(msg_hat, msg));
        b.post_bits = kMessageBits;
        return b;
    }

  private:
    const LdpcCode* ldpc_;
    BchCode bch_;
    double alpha_;
    int max_iters_;
};

// --- sweep driver ----------------------------------------------------------

struct SweepSummaryPoint {
    double x = 0.0;
    double snr_db = 0.0;
    long long trials = 0;
    double avg_iterations = 0.0;
    double inner_failure_rate = 0.0;
    double outer_failure_rate = 0.0;
};

struct SweepOutput {
    std::vector<MetricCurve> curves;
    std::vector<SweepSummaryPoint> summary;
};

struct SweepSpec {
    Axis axis = Axis::SnrDb;
    std::vector<double> grid;
    int t = 10;
    std::vector<double> deltas;
    long long trials = 1000;
    std::uint64_t seed = 1;
    int workers = 0;
    double confidence = 0.95;
};

namespace detail {
inline std::string format_delta(double d) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", d);
    return buf;
}
}  // namespace detail

// Runs every requested metric from one set of trials per grid point.
template <class Scenario>
SweepOutput run_metric_sweep(const Scenario& scen, const SweepSpec& spec) {
    SweepOutput out;
    const int sb = scen.sb();
    std::vector<int> thresholds;
    thresholds.reserve(spec.deltas.size());
    for (double d : spec.deltas)
        thresholds.push_back(ber_cdf_event_threshold(sb, d));

    MetricCurve be_cdf{spec.axis, "be_cdf_bc", {}, {}};
    be_cdf.params["t"] = std::to_string(spec.t);
    be_cdf.params["block_bits"] = std::to_string(scen.pre_block_bits());
    MetricCurve ber_pre{spec.axis, "ber_pre", {}, {}};
    MetricCurve ber_post{spec.axis, "ber_post", {}, {}};
    std::vector<MetricCurve> cdf_ac;
    for (double d : spec.deltas) {
        MetricCurve c{spec.axis, "ber_cdf_ac_d" + detail::format_delta(d), {}, {}};
        c.params["delta"] = detail::format_delta(d);
        c.params["sb"] = std::to_string(sb);
        cdf_ac.push_back(std::move(c));
    }

    for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
        const double x = spec.grid[gi];
        const double snr_db = scen.snr_db_for(spec.axis, x);
        const PointTotals tot = mc_point(scen, snr_db, spec.t, thresholds,
                                         spec.trials, spec.seed,
                                         static_cast<std::uint64_t>(gi),
                                         spec.workers);
        auto push = [&](MetricCurve& c, long long events, long long denom) {
            const BerEstimate e = make_estimate(events, denom, spec.confidence);
            c.points.push_back({x, e.p_hat, e.ci_low, e.ci_high, denom, events});
        };
        if (tot.pre_blocks > 0) {
            push(be_cdf, tot.pre_events, tot.pre_blocks);
            push(ber_pre, tot.pre_errors, tot.pre_bits);
        }
        if (tot.post_bits > 0) {
            push(ber_post, tot.post_errors, tot.post_bits);
            for (std::size_t d = 0; d < spec.deltas.size(); ++d)
                push(cdf_ac[d], tot.post_events[d], tot.trials);
        }
        SweepSummaryPoint s;
        s.x = x;
        s.snr_db = snr_db;
        s.trials = tot.trials;
        s.avg_iterations = tot.decode_calls > 0
                               ? static_cast<double>(tot.iterations) / tot.decode_calls
                               : 0.0;
        s.inner_failure_rate =
            tot.trials > 0 ? static_cast<double>(tot.inner_failures) / tot.trials : 0.0;
        s.outer_failure_rate = tot.decode_calls > 0
                                   ? static_cast<double>(tot.outer_failures) /
                                         tot.decode_calls
                                   : 0.0;
        out.summary.push_back(s);
    }

    if (!be_cdf.points.empty()) out.curves.push_back(std::move(be_cdf));
    if (!ber_pre.points.empty()) out.curves.push_back(std::move(ber_pre));
    if (!ber_post.points.empty()) out.curves.push_back(std::move(ber_post));
    for (auto& c : cdf_ac)
        if (!c.points.empty()) out.curves.push_back(std::move(c));
    return out;
}

// Single-point estimators matching the metric definitions.
template <class Scenario>
BerEstimate be_cdf_mc(const Scenario& scen, int t, double x_db, Axis axis,
                      long long trials, std::uint64_t seed, int workers = 0) {
    const PointTotals tot = mc_point(scen, scen.snr_db_for(axis, x_db), t, {},
                                     trials, seed, 0, workers);
    return make_estimate(tot.pre_events, tot.pre_blocks);
}

template <class Scenario>
BerEstimate ber_cdf_ac_mc(const Scenario& scen, double delta, int s_b,
                          double ebno_db, long long trials, std::uint64_t seed,
                          int workers = 0) {
    if (s_b != scen.sb())
        throw std::invalid_argument(
            "ber_cdf_ac_mc: S_b does not match the scenario block granularity");
    const std::vector<int> thr = {ber_cdf_event_threshold(s_b, delta)};
    const PointTotals tot = mc_point(scen, scen.snr_db_for(Axis::EbnoDb, ebno_db),
                                     /*t=*/0, thr, trials, seed, 0, workers);
    return make_estimate(tot.post_events[0], tot.trials);
}

// --- effective-BSC reduction ------------------------------------------------

inline double secrecy_capacity_bsc(double p_main, double p_wiretap) {
    if (p_main < 0.0 || p_main > 0.5 || p_wiretap < 0.0 || p_wiretap > 0.5)
        throw std::invalid_argument("secrecy_capacity_bsc: p outside [0, 0.5]");
    const double cs = binary_entropy(p_wiretap) - binary_entropy(p_main);
    return cs > 0.0 ? cs : 0.0;
}

struct EffectiveBscReport {
    double p_wiretap_lower = 0.0;
    double confidence = 0.0;      // BER-CDF^ac value backing the bound
    double operating_x_db = 0.0;  // largest Eb/N0 where the bound holds
    double p_main = 0.0;
    double residual_main_failure = 0.0;
    double c_s_bits = 0.0;
    double soft_info_kl = 0.0;  // D(p||q) at the operating point, when known
    std::string independence_note;
};

struct BscReductionInput {
    MetricCurve eve_ber_cdf_ac;  // non-increasing in Eb/N0
    double delta = 0.0;
    // optional KL-vs-x curve sampled on the same axis
    std::optional<MetricCurve> kl_by_x;
    double bob_block_failure_rate = 0.0;
};

// Crossover lower bound for the effective wiretap BSC: p = 0.5 - delta
// holds per S_b-bit block with probability >= confidence_target for
// every Eb/N0 at or below the reported operating point. The main
// channel is reported noiseless only while Bob's block-failure rate
// stays within 1 - 0.9975.
inline EffectiveBscReport reduce_to_bsc(const BscReductionInput& in, double delta,
                                        double confidence_target) {
    if (delta < 0.0 || delta > 0.5)
        throw std::invalid_argument("reduce_to_bsc: delta outside [0, 0.5]");
    if (confidence_target >= 1.0)
        throw std::domain_error(
            "reduce_to_bsc: a probability-1 target cannot be certified from "
            "finitely many trials");
    if (!(confidence_target > 0.0))
        throw std::invalid_argument("reduce_to_bsc: confidence target must be > 0");
    constexpr double kMainFailureBudget = 1.0 - 0.9975;
    if (in.bob_block_failure_rate > kMainFailureBudget)
        throw std::domain_error(
            "reduce_to_bsc: main channel not effectively noiseless (block "
            "failure rate above budget)");

    const auto fit = detail::fit_monotone(in.eve_ber_cdf_ac);
    const double x = detail::crossing_x(in.eve_ber_cdf_ac, fit.fitted,
                                        confidence_target,
                                        /*smallest_x_meeting=*/false,
                                        /*meeting_means_geq=*/!fit.increasing);

    EffectiveBscReport rep;
    rep.p_wiretap_lower = 0.5 - delta;
    rep.confidence = confidence_target;
    rep.operating_x_db = x;
    rep.p_main = 0.0;
    rep.residual_main_failure = in.bob_block_failure_rate;
    rep.c_s_bits = secrecy_capacity_bsc(rep.p_main, rep.p_wiretap_lower);
    rep.independence_note =
        "bits of one secrecy codeword are spread across packets by the "
        "inter-block interleaver; per-bit error events are treated as "
        "independent at the secrecy-codeword level";
    if (in.kl_by_x && !in.kl_by_x->points.empty()) {
        // linear interpolation of the KL curve at the operating point
        const auto& pts = in.kl_by_x->points;
        if (x <= pts.front().x) {
            rep.soft_info_kl = pts.front().value;
        } else if (x >= pts.back().x) {
            rep.soft_info_kl = pts.back().value;
        } else {
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (x <= pts[i].x) {
                    const double f = (x - pts[i - 1].x) / (pts[i].x - pts[i - 1].x);
                    rep.soft_info_kl =
                        pts[i - 1].value + f * (pts[i].value - pts[i - 1].value);
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace wiretap
