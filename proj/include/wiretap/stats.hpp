#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wiretap {

// standard normal tail Q(x) = Pr(N(0,1) > x)
inline double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// inverse standard normal CDF: Acklam's rational approximation refined
// with one Halley step against erfc
inline double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("normal_quantile: p must be in (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2 * 3.14159265358979323846) * std::exp(x * x / 2);
    return x - u / (1 + x * u / 2);
}

inline double log_binomial_coeff(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Pr(X <= t) for X ~ Binomial(n, p); terms accumulated in log space so
// blocklengths beyond 1000 stay finite.
inline double binomial_cdf(int t, int n, double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("binomial_cdf: p outside [0,1]");
    if (t < 0) return 0.0;
    if (t >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    double sum = 0.0;
    for (int i = 0; i <= t; ++i)
        sum += std::exp(log_binomial_coeff(n, i) + i * lp + (n - i) * lq);
    return std::min(1.0, sum);
}

struct Interval {
    double low = 0.0, high = 1.0;
};

// Wilson score interval for a binomial proportion.
inline Interval wilson_ci(long long errors, long long trials, double confidence) {
    if (trials < 1) throw std::invalid_argument("wilson_ci: trials must be >= 1");
    if (errors < 0 || errors > trials)
        throw std::invalid_argument("wilson_ci: errors outside [0, trials]");
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw std::invalid_argument("wilson_ci: confidence outside (0,1)");
    const double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (ph + z2 / (2 * n)) / denom;
    const double half =
        z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// One-sigma standard error derived from the Wilson interval; stays
// positive at 0 or n events where the Wald estimate collapses.
inline double wilson_stderr(long long errors, long long trials) {
    const Interval ci = wilson_ci(errors, trials, 0.95);
    return (ci.high - ci.low) / (2.0 * 1.959963984540054);
}

inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Pool-adjacent-violators: weighted least-squares fit monotone in the
// requested direction.
inline std::vector<double> isotonic_fit(const std::vector<double>& y,
                                        const std::vector<double>& w,
                                        bool increasing) {
    const std::size_t n = y.size();
    if (w.size() != n) throw std::invalid_argument("isotonic_fit: weight size");
    std::vector<double> level, wt;
    std::vector<std::size_t> count;
    for (std::size_t i = 0; i < n; ++i) {
        double v = increasing ? y[i] : -y[i];
        double wi = w[i];
        std::size_t c = 1;
        while (!level.empty() && level.back() > v) {
            v = (level.back() * wt.back() + v * wi) / (wt.back() + wi);
            wi += wt.back();
            c += count.back();
            level.pop_back();
            wt.pop_back();
            count.pop_back();
        }
        level.push_back(v);
        wt.push_back(wi);
        count.push_back(c);
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t b = 0; b < level.size(); ++b)
        for (std::size_t j = 0; j < count[b]; ++j)
            out.push_back(increasing ? level[b] : -level[b]);
    return out;
}

inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 2)
        throw std::invalid_argument("spearman_rho: need two same-length samples");
    auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return v[a] < v[b];
        });
        std::vector<double> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> rx = ranks(x), ry = ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace wiretap
