#pragma once

#include <utility>

#include "wiretap/bits.hpp"

namespace wiretap {

// Multiplicative scrambler: an invertible k x k matrix over GF(2)
// applied at the encoder, its inverse at the decoder. A single bit
// error entering descramble() spreads over about half the output bits.
class Scrambler {
  public:
    explicit Scrambler(BitMatrix s) : s_(std::move(s)), s_inv_(invert_matrix(s_)) {}

    static Scrambler random(std::size_t k, Rng& rng) {
        return Scrambler(random_invertible_matrix(k, rng));
    }

    std::size_t k() const { return s_.rows(); }
    const BitMatrix& matrix() const { return s_; }
    const BitMatrix& inverse() const { return s_inv_; }

    BitVec scramble(const BitVec& msg) const { return mat_vec_mul(s_, msg); }
    BitVec descramble(const BitVec& v) const { return mat_vec_mul(s_inv_, v); }

  private:
    BitMatrix s_;
    BitMatrix s_inv_;
};

}  // namespace wiretap
