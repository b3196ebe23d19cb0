#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "wiretap/bits.hpp"

namespace wiretap {

inline constexpr double kPi = 3.14159265358979323846;

enum class ModKind { Bpsk, Dpsk };

struct ModScheme {
    ModKind kind = ModKind::Bpsk;
    int order = 2;  // L; 2 for BPSK, {2,4} for DPSK

    int bits_per_symbol() const { return order == 4 ? 2 : 1; }

    static ModScheme bpsk() { return {ModKind::Bpsk, 2}; }
    static ModScheme dpsk(int order) {
        if (order != 2 && order != 4)
            throw std::invalid_argument("ModScheme: DPSK order must be 2 or 4");
        return {ModKind::Dpsk, order};
    }
};

// SNR here is energy per transmitted (channel) bit over N0; Eb/N0 is per
// information bit. The two differ by the overall rate of the coding
// chain: SNR = R * Eb/N0.
inline double ebno_to_snr_db(double ebno_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("ebno_to_snr_db: rate must be in (0,1]");
    return ebno_db + 10.0 * std::log10(rate);
}

inline double snr_to_ebno_db(double snr_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("snr_to_ebno_db: rate must be in (0,1]");
    return snr_db - 10.0 * std::log10(rate);
}

struct RateContext {
    double rate = 1.0;
    double to_snr_db(double ebno_db) const { return ebno_to_snr_db(ebno_db, rate); }
    double to_ebno_db(double snr_db) const { return snr_to_ebno_db(snr_db, rate); }
};

// 0 -> +1, 1 -> -1, unit symbol energy
inline std::vector<double> bpsk_modulate(const BitVec& bits) {
    std::vector<double> s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? -1.0 : 1.0;
    return s;
}

// LLR_i = 2 y_i / sigma^2; positive means bit 0 more likely
inline std::vector<double> bpsk_llr(const std::vector<double>& received,
                                    double noise_var) {
    if (!(noise_var > 0.0))
        throw std::invalid_argument("bpsk_llr: noise variance must be positive");
    std::vector<double> llr(received.size());
    const double scale = 2.0 / noise_var;
    for (std::size_t i = 0; i < received.size(); ++i) llr[i] = scale * received[i];
    return llr;
}

inline BitVec bpsk_hard_decide(const std::vector<double>& received) {
    BitVec bits(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) bits[i] = received[i] < 0.0;
    return bits;
}

namespace detail {
// Gray map between bit pairs and quadrant indices: 00 01 11 10
inline int gray_to_index(int b1, int b0) {
    static constexpr int lut[4] = {0, 1, 3, 2};  // (b1<<1)|b0 -> phase step
    return lut[(b1 << 1) | b0];
}
inline void index_to_gray(int idx, std::uint8_t& b1, std::uint8_t& b0) {
    static constexpr int lut[4] = {0, 1, 3, 2};  // phase step -> (b1<<1)|b0
    b1 = static_cast<std::uint8_t>(lut[idx] >> 1);
    b0 = static_cast<std::uint8_t>(lut[idx] & 1);
}
}  // namespace detail

// Differential PSK with a leading reference symbol that carries no data.
// L=2 encodes one bit per symbol as a {0, pi} phase step; L=4 encodes
// Gray-mapped bit pairs as multiples of pi/2.
inline std::vector<std::complex<double>> dpsk_modulate(const BitVec& bits, int order) {
    if (order != 2 && order != 4)
        throw std::invalid_argument("dpsk_modulate: order must be 2 or 4");
    if (order == 4 && bits.size() % 2 != 0)
        throw std::invalid_argument("dpsk_modulate: odd bit count for L=4");
    const std::size_t nsym = order == 2 ? bits.size() : bits.size() / 2;
    std::vector<std::complex<double>> s;
    s.reserve(nsym + 1);
    s.emplace_back(1.0, 0.0);
    double phase = 0.0;
    for (std::size_t i = 0; i < nsym; ++i) {
        int step;
        if (order == 2) {
            step = bits[i] ? 1 : 0;
            phase += step * kPi;
        } else {
            step = detail::gray_to_index(bits[2 * i], bits[2 * i + 1]);
            phase += step * (kPi / 2.0);
        }
        s.emplace_back(std::cos(phase), std::sin(phase));
    }
    return s;
}

// Non-coherent differential detection: decisions from the phase of
// y_k * conj(y_{k-1}).
inline BitVec dpsk_demodulate(const std::vector<std::complex<double>>& received,
                              int order) {
    if (order != 2 && order != 4)
        throw std::invalid_argument("dpsk_demodulate: order must be 2 or 4");
    if (received.size() < 1)
        throw std::invalid_argument("dpsk_demodulate: missing reference symbol");
    const std::size_t nsym = received.size() - 1;
    BitVec bits;
    bits.reserve(order == 2 ? nsym : 2 * nsym);
    for (std::size_t i = 1; i <= nsym; ++i) {
        const std::complex<double> d = received[i] * std::conj(received[i - 1]);
        if (order == 2) {
            bits.push_back(d.real() < 0.0);
        } else {
            // nearest multiple of pi/2
            const double ang = std::atan2(d.imag(), d.real());
            int idx = static_cast<int>(std::lround(ang / (kPi / 2.0)));
            idx = ((idx % 4) + 4) % 4;
            std::uint8_t b1, b0;
            detail::index_to_gray(idx, b1, b0);
            bits.push_back(b1);
            bits.push_back(b0);
        }
    }
    return bits;
}

}  // namespace wiretap
