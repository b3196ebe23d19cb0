#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wiretap/bits.hpp"

namespace wiretap {

// Key-driven interleaver: a 64-bit key selects a permutation via
// Fisher-Yates on a counter-based stream, so the key -> permutation map
// is identical on every platform. Keys differing in a single bit yield
// unrelated permutations; deinterleaving with a wrong key leaves the
// message close to a uniform shuffle.
class KeyedInterleaver {
  public:
    static constexpr std::size_t kKeyBits = 64;

    KeyedInterleaver(const BitVec& key, std::size_t length) : key_(key) {
        if (key.size() != kKeyBits)
            throw std::invalid_argument("KeyedInterleaver: key must be 64 bits");
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < kKeyBits; ++i)
            if (key[i]) word |= 1ULL << i;
        perm_.resize(length);
        for (std::size_t i = 0; i < length; ++i)
            perm_[i] = static_cast<std::uint32_t>(i);
        Rng rng = Rng::stream(word, kSalt);
        for (std::size_t i = length; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i));
            std::swap(perm_[i - 1], perm_[j]);
        }
        inv_.resize(length);
        for (std::size_t i = 0; i < length; ++i) inv_[perm_[i]] = static_cast<std::uint32_t>(i);
    }

    std::size_t length() const { return perm_.size(); }
    const BitVec& key() const { return key_; }
    const std::vector<std::uint32_t>& permutation() const { return perm_; }
    const std::vector<std::uint32_t>& inverse_permutation() const { return inv_; }

    BitVec interleave(const BitVec& msg) const {
        if (msg.size() != perm_.size())
            throw std::invalid_argument("KeyedInterleaver: length mismatch");
        BitVec out(msg.size());
        for (std::size_t i = 0; i < msg.size(); ++i) out[i] = msg[perm_[i]];
        return out;
    }

    BitVec deinterleave(const BitVec& v) const {
        if (v.size() != perm_.size())
            throw std::invalid_argument("KeyedInterleaver: length mismatch");
        BitVec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[perm_[i]] = v[i];
        return out;
    }

  private:
    static constexpr std::uint64_t kSalt = 0x496E746C76724B31ULL;

    BitVec key_;
    std::vector<std::uint32_t> perm_;
    std::vector<std::uint32_t> inv_;
};

}  // namespace wiretap
