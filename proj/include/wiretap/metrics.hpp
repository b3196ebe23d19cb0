#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/stats.hpp"

namespace wiretap {

// Monte Carlo proportion estimate with its Wilson interval.
struct BerEstimate {
    long long events = 0;
    long long trials = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = 0.95;
};

inline BerEstimate make_estimate(long long events, long long trials,
                                 double confidence = 0.95) {
    BerEstimate e;
    e.events = events;
    e.trials = trials;
    e.p_hat = trials > 0 ? static_cast<double>(events) / trials : 0.0;
    const Interval ci = wilson_ci(events, trials, confidence);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    e.confidence = confidence;
    return e;
}

enum class Axis { SnrDb, EbnoDb, Delta };

inline std::string axis_name(Axis a) {
    switch (a) {
        case Axis::SnrDb: return "snr_db";
        case Axis::EbnoDb: return "ebno_db";
        case Axis::Delta: return "delta";
    }
    return "?";
}

struct CurvePoint {
    double x = 0.0;
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long long trials = 0;
    long long events = 0;
};

// A sampled metric-vs-axis curve; `params` records the knobs (t, delta,
// S_b, alpha, code ids) that produced it.
struct MetricCurve {
    Axis axis = Axis::SnrDb;
    std::string metric_id;
    std::vector<CurvePoint> points;
    std::map<std::string, std::string> params;
};

// --- analytic forms -------------------------------------------------------

// BPSK over AWGN: P_b = 1/2 erfc(sqrt(SNR))
inline double ber_bpsk_awgn(double snr_linear) {
    if (!(snr_linear > 0.0))
        throw std::domain_error("ber_bpsk_awgn: snr must be positive");
    return 0.5 * std::erfc(std::sqrt(snr_linear));
}

// Pr(E <= t) over an n-bit block with iid bit error probability p_b.
inline double be_cdf_analytic(int n, int t, double p_b) {
    return binomial_cdf(t, n, p_b);
}

// Exact iid form of Pr(error proportion over S_b bits > 0.5 - delta).
inline double ber_cdf_ac_exact_iid(int s_b, double delta, double p_b) {
    if (s_b < 1) throw std::invalid_argument("ber_cdf_ac_exact_iid: S_b must be >= 1");
    if (delta < 0.0 || delta > 0.5)
        throw std::invalid_argument("ber_cdf_ac_exact_iid: delta outside [0, 0.5]");
    const int thr = static_cast<int>(std::floor(s_b * (0.5 - delta)));
    return 1.0 - binomial_cdf(thr, s_b, p_b);
}

// Limit of the BER-CDF^ac as Eb/N0 -> -inf: Q(-2 delta sqrt(S_b)).
inline double limiting_value(double delta, int s_b) {
    if (delta < 0.0) throw std::invalid_argument("limiting_value: delta < 0");
    if (s_b < 1) throw std::invalid_argument("limiting_value: S_b must be >= 1");
    return q_func(-2.0 * delta * std::sqrt(static_cast<double>(s_b)));
}

// Integer event threshold shared by the exact formula and the Monte
// Carlo estimators: proportion > 0.5 - delta  <=>  errors >= thr + 1.
inline int ber_cdf_event_threshold(int s_b, double delta) {
    return static_cast<int>(std::floor(s_b * (0.5 - delta)));
}

// Smallest SNR (dB) where the analytic BE-CDF crosses `level` from
// below; bisection on a strictly increasing function of SNR.
inline double be_cdf_snr_threshold_db(int n, int t, double level, double lo_db = -20.0,
                                      double hi_db = 20.0) {
    auto f = [&](double snr_db) {
        return be_cdf_analytic(n, t, ber_bpsk_awgn(db_to_linear(snr_db))) - level;
    };
    if (f(lo_db) > 0.0 || f(hi_db) < 0.0)
        throw std::domain_error("be_cdf_snr_threshold_db: level outside bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo_db + hi_db);
        (f(mid) < 0.0 ? lo_db : hi_db) = mid;
    }
    return 0.5 * (lo_db + hi_db);
}

// --- curve utilities ------------------------------------------------------

namespace detail {

inline std::vector<double> curve_weights(const MetricCurve& c) {
    std::vector<double> w(c.points.size(), 1.0);
    for (std::size_t i = 0; i < c.points.size(); ++i)
        if (c.points[i].trials > 0) w[i] = static_cast<double>(c.points[i].trials);
    return w;
}

struct MonotoneFit {
    bool increasing = false;
    std::vector<double> fitted;
};

// Fit both directions and keep the one with the smaller weighted SSE.
inline MonotoneFit fit_monotone(const MetricCurve& c) {
    std::vector<double> y;
    y.reserve(c.points.size());
    for (const auto& p : c.points) y.push_back(p.value);
    const std::vector<double> w = curve_weights(c);
    const std::vector<double> up = isotonic_fit(y, w, true);
    const std::vector<double> down = isotonic_fit(y, w, false);
    double sse_up = 0, sse_down = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sse_up += w[i] * (y[i] - up[i]) * (y[i] - up[i]);
        sse_down += w[i] * (y[i] - down[i]) * (y[i] - down[i]);
    }
    if (sse_up <= sse_down) return {true, up};
    return {false, down};
}

// x where the fitted curve first (or last) meets `level`; linear
// interpolation between grid points in the dB domain.
inline double crossing_x(const MetricCurve& c, const std::vector<double>& fitted,
                         double level, bool smallest_x_meeting,
                         bool meeting_means_geq) {
    const auto meets = [&](double v) {
        return meeting_means_geq ? v >= level : v <= level;
    };
    const std::size_t n = fitted.size();
    if (n == 0) throw std::domain_error("crossing_x: empty curve");
    if (smallest_x_meeting) {
        if (!meets(fitted[n - 1]))
            throw std::domain_error("crossing_x: target outside curve range");
        for (std::size_t i = 0; i < n; ++i) {
            if (meets(fitted[i])) {
                if (i == 0) return c.points[0].x;
                const double x0 = c.points[i - 1].x, x1 = c.points[i].x;
                const double y0 = fitted[i - 1], y1 = fitted[i];
                if (y1 == y0) return x1;
                return x0 + (level - y0) / (y1 - y0) * (x1 - x0);
            }
        }
    } else {
        if (!meets(fitted[0]))
            throw std::domain_error("crossing_x: target outside curve range");
        for (std::size_t i = n; i-- > 0;) {
            if (meets(fitted[i])) {
                if (i == n - 1) return c.points[n - 1].x;
                const double x0 = c.points[i].x, x1 = c.points[i + 1].x;
                const double y0 = fitted[i], y1 = fitted[i + 1];
                if (y1 == y0) return x0;
                return x0 + (level - y0) / (y1 - y0) * (x1 - x0);
            }
        }
    }
    throw std::domain_error("crossing_x: target outside curve range");
}

}  // namespace detail

// Security gap in dB: the smallest axis value meeting the legitimate
// receiver's reliability target minus the largest axis value keeping the
// eavesdropper at her insecurity target. The metric orientation is
// inferred from each curve's monotone direction: for an increasing
// metric (e.g. Pr(E<=t)) reliability means value >= target and security
// means value <= target; for a decreasing metric (e.g. BER) the
// inequalities flip.
inline double security_gap(const MetricCurve& curve_main, double target_main,
                           const MetricCurve& curve_eve, double target_eve) {
    const auto fit_m = detail::fit_monotone(curve_main);
    const auto fit_e = detail::fit_monotone(curve_eve);
    const double x_main = detail::crossing_x(curve_main, fit_m.fitted, target_main,
                                             /*smallest_x_meeting=*/true,
                                             /*meeting_means_geq=*/fit_m.increasing);
    const double x_eve = detail::crossing_x(curve_eve, fit_e.fitted, target_eve,
                                            /*smallest_x_meeting=*/false,
                                            /*meeting_means_geq=*/!fit_e.increasing);
    return x_main - x_eve;
}

}  // namespace wiretap
