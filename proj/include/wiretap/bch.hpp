#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "wiretap/bits.hpp"
#include "wiretap/gf.hpp"

namespace wiretap {

// Result of a block decode attempt. For bounded-distance decoding,
// `success` with more than t channel errors means the decoder landed on
// a wrong codeword (miscorrection); callers that need the distinction
// compare against the transmitted data. On failure `bits` carries the
// hard decisions at the systematic positions so downstream processing
// can still consume the block.
struct DecodeOutcome {
    BitVec bits;
    bool success = false;
    int corrected = 0;
    int iterations = 0;  // soft decoders only
};

// Binary primitive BCH code of length 2^m - 1 correcting up to t errors.
// Generator polynomial is the LCM of the minimal polynomials of
// alpha, alpha^2, ..., alpha^2t; decoding is Berlekamp-Massey plus
// Chien search. Codewords are systematic: message in positions 0..k-1,
// parity in positions k..n-1. Bit j of the codeword holds the
// coefficient of x^(n-1-j).
class BchCode {
  public:
    BchCode(int m, int t) : field_(ExtField::with_default_poly(m)), t_(t) {
        if (t < 1) throw std::invalid_argument("BchCode: t must be >= 1");
        n_ = static_cast<int>(field_.order());

        // cyclotomic cosets of 1..2t modulo 2^m - 1
        std::set<int> done;
        generator_ = {1};
        for (int b = 1; b <= 2 * t; ++b) {
            const int start = b % n_;
            if (done.count(start)) continue;
            std::vector<int> coset;
            int e = start;
            do {
                coset.push_back(e);
                done.insert(e);
                e = (2 * e) % n_;
            } while (e != start);
            generator_ = poly_mul(generator_, minimal_poly(coset));
        }
        k_ = n_ - poly_degree(generator_);
        if (k_ <= 0)
            throw std::invalid_argument("BchCode: t too large for blocklength");
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int t() const { return t_; }
    const Gf2Poly& generator_poly() const { return generator_; }
    const ExtField& field() const { return field_; }

    BitVec encode(const BitVec& msg) const {
        if (static_cast<int>(msg.size()) != k_)
            throw std::invalid_argument("BchCode::encode: message length mismatch");
        // parity = x^(n-k) m(x) mod g(x), computed by shift-register division
        const int np = n_ - k_;
        BitVec rem(static_cast<std::size_t>(np), 0);
        for (int j = 0; j < k_; ++j) {
            const std::uint8_t fb = msg[static_cast<std::size_t>(j)] ^ rem[0];
            for (int i = 0; i < np - 1; ++i)
                rem[static_cast<std::size_t>(i)] =
                    rem[static_cast<std::size_t>(i + 1)] ^
                    (fb & generator_[static_cast<std::size_t>(np - 1 - i)]);
            rem[static_cast<std::size_t>(np - 1)] = fb & generator_[0];
        }
        BitVec cw(static_cast<std::size_t>(n_));
        std::copy(msg.begin(), msg.end(), cw.begin());
        std::copy(rem.begin(), rem.end(), cw.begin() + k_);
        return cw;
    }

    DecodeOutcome decode(const BitVec& received) const {
        if (static_cast<int>(received.size()) != n_)
            throw std::invalid_argument("BchCode::decode: word length mismatch");

        // syndromes S_j = r(alpha^j), j = 1..2t
        std::vector<std::uint16_t> synd(static_cast<std::size_t>(2 * t_ + 1), 0);
        bool all_zero = true;
        for (int j = 1; j <= 2 * t_; ++j) {
            std::uint16_t s = 0;
            for (int i = 0; i < n_; ++i) {
                if (!received[static_cast<std::size_t>(i)]) continue;
                s = ExtField::add(
                    s, field_.alpha_pow(static_cast<std::uint32_t>(j) *
                                        static_cast<std::uint32_t>(n_ - 1 - i)));
            }
            synd[static_cast<std::size_t>(j)] = s;
            all_zero = all_zero && s == 0;
        }

        DecodeOutcome out;
        if (all_zero) {
            out.bits.assign(received.begin(), received.begin() + k_);
            out.success = true;
            return out;
        }

        // Berlekamp-Massey for the error locator Lambda(x)
        std::vector<std::uint16_t> lambda = {1}, prev = {1};
        int L = 0, shift = 1;
        std::uint16_t prev_disc = 1;
        for (int r = 1; r <= 2 * t_; ++r) {
            std::uint16_t d = synd[static_cast<std::size_t>(r)];
            for (int i = 1; i <= L && i < static_cast<int>(lambda.size()); ++i)
                d = ExtField::add(
                    d, field_.mul(lambda[static_cast<std::size_t>(i)],
                                  synd[static_cast<std::size_t>(r - i)]));
            if (d == 0) {
                ++shift;
                continue;
            }
            const std::uint16_t coef = field_.div(d, prev_disc);
            std::vector<std::uint16_t> next = lambda;
            if (next.size() < prev.size() + static_cast<std::size_t>(shift))
                next.resize(prev.size() + static_cast<std::size_t>(shift), 0);
            for (std::size_t i = 0; i < prev.size(); ++i)
                next[i + static_cast<std::size_t>(shift)] = ExtField::add(
                    next[i + static_cast<std::size_t>(shift)], field_.mul(coef, prev[i]));
            if (2 * L <= r - 1) {
                prev = lambda;
                prev_disc = d;
                L = r - L;
                shift = 1;
            } else {
                ++shift;
            }
            lambda = std::move(next);
        }

        out.bits.assign(received.begin(), received.begin() + k_);
        if (L > t_) return out;  // failure: locator degree beyond capability

        // Chien search: Lambda's roots are alpha^(-p) for error at power
        // p, i.e. codeword position n-1-p. The locator degree must match
        // the root count or the pattern is uncorrectable.
        std::vector<int> positions;
        for (int i = 0; i < n_; ++i) {
            std::uint16_t v = 0;
            for (int j = 0; j < static_cast<int>(lambda.size()); ++j) {
                if (!lambda[static_cast<std::size_t>(j)]) continue;
                v = ExtField::add(
                    v, field_.mul(lambda[static_cast<std::size_t>(j)],
                                  field_.alpha_pow(
                                      static_cast<std::uint32_t>(i) *
                                      static_cast<std::uint32_t>(j))));
            }
            if (v == 0) {
                const int p = (n_ - i) % n_;
                positions.push_back(n_ - 1 - p);
            }
        }
        if (static_cast<int>(positions.size()) != L) return out;

        BitVec corrected = received;
        for (int pos : positions) corrected[static_cast<std::size_t>(pos)] ^= 1;
        out.bits.assign(corrected.begin(), corrected.begin() + k_);
        out.success = true;
        out.corrected = L;
        return out;
    }

  private:
    // product of (x - alpha^j) over a cyclotomic coset; coefficients of
    // the result always land in the base field
    Gf2Poly minimal_poly(const std::vector<int>& coset) const {
        std::vector<std::uint16_t> p = {1};
        for (int j : coset) {
            std::vector<std::uint16_t> q(p.size() + 1, 0);
            const std::uint16_t root = field_.alpha_pow(static_cast<std::uint32_t>(j));
            for (std::size_t i = 0; i < p.size(); ++i) {
                q[i + 1] = ExtField::add(q[i + 1], p[i]);          // x * p
                q[i] = ExtField::add(q[i], field_.mul(root, p[i]));  // root * p
            }
            p = std::move(q);
        }
        Gf2Poly r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] > 1)
                throw std::logic_error("BchCode: minimal polynomial not binary");
            r[i] = static_cast<std::uint8_t>(p[i]);
        }
        return r;
    }

    ExtField field_;
    int t_;
    int n_ = 0;
    int k_ = 0;
    Gf2Poly generator_;
};

}  // namespace wiretap
