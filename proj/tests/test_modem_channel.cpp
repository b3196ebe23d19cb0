#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wiretap/channel.hpp"
#include "wiretap/metrics.hpp"
#include "wiretap/modem.hpp"
#include "wiretap/rng.hpp"

using namespace wiretap;

TEST_CASE("bpsk mapping and energy") {
    REQUIRE(bpsk_modulate({0, 1, 0}) == std::vector<double>{1.0, -1.0, 1.0});
    REQUIRE(bpsk_modulate({}).empty());
    for (double s : bpsk_modulate({0, 1, 1, 0})) REQUIRE(std::abs(s) == 1.0);
}

TEST_CASE("bpsk llr formula and scaling") {
    REQUIRE(bpsk_llr({1.0}, 1.0)[0] == Catch::Approx(2.0));
    REQUIRE(bpsk_llr({0.0}, 1.0)[0] == 0.0);
    const auto a = bpsk_llr({0.7, -0.3}, 1.0);
    const auto b = bpsk_llr({0.7, -0.3}, 2.0);
    REQUIRE(a[0] == Catch::Approx(2 * b[0]));
    REQUIRE(a[1] == Catch::Approx(2 * b[1]));
    REQUIRE_THROWS_AS(bpsk_llr({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("llr sign equals the hard decision") {
    Rng rng(1);
    const AwgnChannel ch = AwgnChannel::from_db(0.0);
    const BitVec bits = random_bits(500, rng);
    const auto y = transmit(ch, bpsk_modulate(bits), JammingProfile::none(), rng);
    const auto llr = bpsk_llr(y, ch.noise_var());
    const BitVec hard = bpsk_hard_decide(y);
    for (std::size_t i = 0; i < bits.size(); ++i)
        REQUIRE((llr[i] < 0.0) == (hard[i] != 0));
}

TEST_CASE("dpsk round-trips on a noiseless channel") {
    Rng rng(2);
    for (int order : {2, 4}) {
        for (int rep = 0; rep < 50; ++rep) {
            const BitVec bits = random_bits(100, rng);
            REQUIRE(dpsk_demodulate(dpsk_modulate(bits, order), order) == bits);
        }
    }
    REQUIRE_THROWS_AS(dpsk_modulate(BitVec(3, 0), 4), std::invalid_argument);
    REQUIRE_THROWS_AS(dpsk_modulate(BitVec(4, 0), 8), std::invalid_argument);
}

TEST_CASE("binary dpsk matches the closed-form error rate") {
    // non-coherent detection of DBPSK: P_b = exp(-Eb/N0) / 2
    const double ebno = 2.0;  // linear
    const AwgnChannel ch(ebno);
    Rng rng(3);
    long long errors = 0;
    const long long bits_per_frame = 500;
    const long long frames = 2000;
    for (long long f = 0; f < frames; ++f) {
        const BitVec bits = random_bits(bits_per_frame, rng);
        const auto y = transmit(ch, dpsk_modulate(bits, 2), JammingProfile::none(), rng);
        errors += static_cast<long long>(hamming_distance(bits, dpsk_demodulate(y, 2)));
    }
    const double expected = 0.5 * std::exp(-ebno);
    const double n = static_cast<double>(bits_per_frame * frames);
    const double sigma = std::sqrt(expected * (1 - expected) / n);
    REQUIRE(std::abs(errors / n - expected) < 4 * sigma);
}

TEST_CASE("snr and ebno conversions") {
    REQUIRE(ebno_to_snr_db(3.7, 1.0) == Catch::Approx(3.7));
    REQUIRE(ebno_to_snr_db(4.7, 880.0 / 1056.0) == Catch::Approx(3.908).margin(0.005));
    const double x = snr_to_ebno_db(ebno_to_snr_db(2.2, 0.5), 0.5);
    REQUIRE(x == Catch::Approx(2.2));
    REQUIRE_THROWS_AS(ebno_to_snr_db(0.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ebno_to_snr_db(0.0, 1.5), std::invalid_argument);
}

TEST_CASE("channel with vanishing noise is transparent") {
    Rng rng(4);
    const AwgnChannel ch(1e6);
    const auto y = transmit(ch, bpsk_modulate(random_bits(1000, rng)),
                            JammingProfile::none(), rng);
    int big = 0;
    for (double v : y) big += std::abs(std::abs(v) - 1.0) > 1e-2;
    REQUIRE(big == 0);
}

TEST_CASE("full-frame jamming matches the effective-noise closed form") {
    Rng rng(5);
    const double snr_db = 3.0;
    const AwgnChannel ch = AwgnChannel::from_db(snr_db);
    const double var_eff = effective_noise_var(ch, 1.0);
    REQUIRE(var_eff == Catch::Approx(ch.noise_var() + 0.5));
    const double snr_eff = 1.0 / (2.0 * var_eff);
    const double expected = ber_bpsk_awgn(snr_eff);

    const long long nbits = 400000;
    const BitVec bits = random_bits(nbits, rng);
    JammingProfile jam = JammingProfile::on_range(1.0, 0, static_cast<std::uint32_t>(nbits));
    const auto y = transmit(ch, bpsk_modulate(bits), jam, rng);
    const long long errors =
        static_cast<long long>(hamming_distance(bits, bpsk_hard_decide(y)));
    const double sigma = std::sqrt(expected * (1 - expected) / nbits);
    REQUIRE(std::abs(static_cast<double>(errors) / nbits - expected) < 4 * sigma);
}

TEST_CASE("jammed positions carry the extra variance") {
    Rng rng(6);
    const AwgnChannel ch = AwgnChannel::from_db(6.5);
    const double alpha = 0.2;
    const long long n = 1000000;
    std::vector<double> zeros(n, 1.0);
    JammingProfile jam = JammingProfile::on_range(alpha, 0, static_cast<std::uint32_t>(n / 2));
    const auto y = transmit(ch, zeros, jam, rng);
    auto var_of = [&](std::size_t lo, std::size_t hi) {
        double s = 0, s2 = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            s += y[i] - 1.0;
            s2 += (y[i] - 1.0) * (y[i] - 1.0);
        }
        const double m = s / (hi - lo);
        return s2 / (hi - lo) - m * m;
    };
    const double vj = var_of(0, n / 2);
    const double vu = var_of(n / 2, n);
    // variance gap = alpha/2 within 3 standard errors of a variance
    // estimate (se ~ var * sqrt(2/n))
    const double se = (ch.noise_var() + alpha / 2) * std::sqrt(2.0 / (n / 2.0)) * 2;
    REQUIRE(std::abs((vj - vu) - alpha / 2) < 3 * se);
}

TEST_CASE("out-of-range jam index is rejected") {
    Rng rng(7);
    const AwgnChannel ch(1.0);
    JammingProfile jam;
    jam.alpha = 0.5;
    jam.jammed_indices = {10};
    REQUIRE_THROWS_AS(transmit(ch, std::vector<double>(5, 1.0), jam, rng),
                      std::out_of_range);
}

TEST_CASE("uncoded BPSK error rate tracks the erfc curve across SNR") {
    for (double snr_db = -6; snr_db <= 6; snr_db += 2) {
        Rng rng = Rng::stream(99, static_cast<std::uint64_t>(snr_db + 10));
        const AwgnChannel ch = AwgnChannel::from_db(snr_db);
        const long long nbits = 200000;
        const BitVec bits = random_bits(nbits, rng);
        const auto y = transmit(ch, bpsk_modulate(bits), JammingProfile::none(), rng);
        const long long errors =
            static_cast<long long>(hamming_distance(bits, bpsk_hard_decide(y)));
        const double p = ber_bpsk_awgn(db_to_linear(snr_db));
        const double sigma = std::sqrt(p * (1 - p) / nbits);
        REQUIRE(std::abs(static_cast<double>(errors) / nbits - p) < 3.5 * sigma);
    }
}
