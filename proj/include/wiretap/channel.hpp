#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wiretap/rng.hpp"

namespace wiretap {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// AWGN channel for unit-energy symbols: noise variance per real
// dimension is 1/(2 snr) with snr = Es/N0.
struct AwgnChannel {
    double snr_linear;

    explicit AwgnChannel(double snr_lin) : snr_linear(snr_lin) {
        if (!(snr_lin > 0.0))
            throw std::invalid_argument("AwgnChannel: snr must be positive");
    }
    static AwgnChannel from_db(double snr_db) {
        return AwgnChannel(db_to_linear(snr_db));
    }

    double noise_var() const { return 1.0 / (2.0 * snr_linear); }
};

// Friendly-interference description: symbols listed in jammed_indices
// receive additional white Gaussian noise of power alpha relative to
// the signal power (alpha/2 per real dimension).
struct JammingProfile {
    double alpha = 0.0;
    std::vector<std::uint32_t> jammed_indices;

    static JammingProfile none() { return {}; }
    static JammingProfile on_range(double alpha, std::uint32_t first,
                                   std::uint32_t count) {
        JammingProfile p;
        p.alpha = alpha;
        p.jammed_indices.resize(count);
        for (std::uint32_t i = 0; i < count; ++i) p.jammed_indices[i] = first + i;
        return p;
    }
};

inline double effective_noise_var(const AwgnChannel& ch, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("effective_noise_var: alpha < 0");
    return ch.noise_var() + alpha / 2.0;
}

inline std::vector<double> transmit(const AwgnChannel& ch,
                                    const std::vector<double>& symbols,
                                    const JammingProfile& jam, Rng& rng) {
    const double sigma = std::sqrt(ch.noise_var());
    std::vector<double> y(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        y[i] = symbols[i] + sigma * rng.gaussian();
    if (jam.alpha > 0.0) {
        const double jsigma = std::sqrt(jam.alpha / 2.0);
        for (std::uint32_t idx : jam.jammed_indices) {
            if (idx >= y.size())
                throw std::out_of_range("transmit: jammed index out of range");
            y[idx] += jsigma * rng.gaussian();
        }
    }
    return y;
}

inline std::vector<std::complex<double>> transmit(
    const AwgnChannel& ch, const std::vector<std::complex<double>>& symbols,
    const JammingProfile& jam, Rng& rng) {
    const double sigma = std::sqrt(ch.noise_var());
    std::vector<std::complex<double>> y(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        y[i] = symbols[i] +
               std::complex<double>(sigma * rng.gaussian(), sigma * rng.gaussian());
    if (jam.alpha > 0.0) {
        const double jsigma = std::sqrt(jam.alpha / 2.0);
        for (std::uint32_t idx : jam.jammed_indices) {
            if (idx >= y.size())
                throw std::out_of_range("transmit: jammed index out of range");
            y[idx] += std::complex<double>(jsigma * rng.gaussian(),
                                           jsigma * rng.gaussian());
        }
    }
    return y;
}

}  // namespace wiretap
