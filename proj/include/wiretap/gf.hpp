#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wiretap {

// Polynomial over GF(2); coefficient of x^i at index i.
using Gf2Poly = std::vector<std::uint8_t>;

inline int poly_degree(const Gf2Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i]) return i;
    return -1;  // zero polynomial
}

inline Gf2Poly poly_trim(Gf2Poly p) {
    p.resize(static_cast<std::size_t>(poly_degree(p) + 1));
    return p;
}

inline Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) {
    const int da = poly_degree(a), db = poly_degree(b);
    if (da < 0 || db < 0) return {};
    Gf2Poly r(static_cast<std::size_t>(da + db + 1), 0);
    for (int i = 0; i <= da; ++i) {
        if (!a[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i + j)] ^= b[static_cast<std::size_t>(j)];
    }
    return r;
}

inline Gf2Poly poly_mod(Gf2Poly a, const Gf2Poly& g) {
    const int dg = poly_degree(g);
    if (dg < 0) throw std::invalid_argument("poly_mod: division by zero polynomial");
    for (int i = poly_degree(a); i >= dg; --i) {
        if (!a[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j <= dg; ++j)
            a[static_cast<std::size_t>(i - dg + j)] ^= g[static_cast<std::size_t>(j)];
    }
    a.resize(static_cast<std::size_t>(dg));
    return a;
}

// GF(2^m) with log/antilog tables over the 2^m - 1 nonzero elements.
// Elements are represented as m-bit polynomials packed into integers.
class ExtField {
  public:
    ExtField(int m, std::uint32_t primitive_poly) : m_(m), poly_(primitive_poly) {
        if (m < 2 || m > 16) throw std::invalid_argument("ExtField: m out of range");
        n_ = (1u << m) - 1;
        exp_.assign(2 * n_, 0);
        log_.assign(n_ + 1, 0);
        // alpha = x; repeated multiplication by x modulo the primitive
        // polynomial enumerates every nonzero element exactly once iff
        // the polynomial is primitive.
        std::uint32_t v = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            exp_[i] = static_cast<std::uint16_t>(v);
            if (v == 1 && i != 0)
                throw std::invalid_argument("ExtField: polynomial is not primitive");
            log_[v] = static_cast<std::uint16_t>(i);
            v <<= 1;
            if (v & (1u << m)) v ^= primitive_poly;
        }
        if (exp_[0] != 1) throw std::logic_error("ExtField: table construction");
        // doubled table spares a mod when adding exponents
        for (std::uint32_t i = 0; i < n_; ++i) exp_[n_ + i] = exp_[i];
    }

    // A standard primitive polynomial for each supported degree.
    // m=7 uses x^7 + x^3 + 1 so the GF(2^7) tables used by the
    // length-127 BCH codes are reproducible.
    static ExtField with_default_poly(int m) {
        static constexpr std::uint32_t polys[] = {
            0,     0,     0x7,   0xB,   0x13,  0x25,
            0x43,  0x89,  0x11D, 0x211, 0x409,
        };
        if (m < 2 || m > 10)
            throw std::invalid_argument("ExtField: no default polynomial for m");
        return ExtField(m, polys[m]);
    }

    int m() const { return m_; }
    std::uint32_t order() const { return n_; }  // 2^m - 1
    std::uint32_t primitive_poly() const { return poly_; }

    std::uint16_t alpha_pow(std::uint32_t e) const { return exp_[e % n_]; }

    std::uint16_t log(std::uint16_t a) const {
        if (a == 0) throw std::domain_error("ExtField::log(0)");
        return log_[a];
    }

    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    std::uint16_t inv(std::uint16_t a) const {
        if (a == 0) throw std::domain_error("ExtField::inv(0)");
        return exp_[n_ - log_[a]];
    }

    std::uint16_t div(std::uint16_t a, std::uint16_t b) const {
        return mul(a, inv(b));
    }

    static std::uint16_t add(std::uint16_t a, std::uint16_t b) {
        return static_cast<std::uint16_t>(a ^ b);
    }

  private:
    int m_;
    std::uint32_t poly_;
    std::uint32_t n_;
    std::vector<std::uint16_t> exp_;
    std::vector<std::uint16_t> log_;
};

}  // namespace wiretap
