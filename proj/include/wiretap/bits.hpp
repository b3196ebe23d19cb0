#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wiretap/rng.hpp"

namespace wiretap {

// Bit sequences are plain byte vectors with one bit per element (0 or 1).
using BitVec = std::vector<std::uint8_t>;

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BitVec random_bits(std::size_t n, Rng& rng) {
    BitVec v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng.random_bit());
    return v;
}

inline std::size_t weight(const BitVec& v) {
    std::size_t w = 0;
    for (auto b : v) w += b;
    return w;
}

inline std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] ^ b[i];
    return d;
}

inline BitVec xor_bits(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
    BitVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
    return r;
}

// Dense binary matrix over GF(2), row-major. Dimensions here never
// exceed ~10^3, so dense byte storage is adequate (the sparse LDPC
// parity-check matrix lives in ldpc.hpp with its own representation).
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void xor_row(std::size_t dst, std::size_t src) {
        auto* d = &a_[dst * cols_];
        const auto* s = &a_[src * cols_];
        for (std::size_t j = 0; j < cols_; ++j) d[j] ^= s[j];
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> a_;
};

inline BitVec mat_vec_mul(const BitMatrix& m, const BitVec& v) {
    if (m.cols() != v.size())
        throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    BitVec r(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc ^= m.at(i, j) & v[j];
        r[i] = acc;
    }
    return r;
}

inline std::size_t gf2_rank(BitMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != rank && m.at(i, col)) m.xor_row(i, rank);
        ++rank;
    }
    return rank;
}

// Gauss-Jordan on [M | I]; throws SingularMatrixError when rank < dim.
inline BitMatrix invert_matrix(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("invert_matrix: matrix not square");
    const std::size_t n = m.rows();
    BitMatrix work = m;
    BitMatrix inv = BitMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work.at(pivot, col) == 0) ++pivot;
        if (pivot == n)
            throw SingularMatrixError("invert_matrix: singular matrix (rank < " +
                                      std::to_string(n) + ")");
        work.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != col && work.at(i, col)) {
                work.xor_row(i, col);
                inv.xor_row(i, col);
            }
        }
    }
    return inv;
}

// Rejection sampling: a uniform GF(2) matrix is invertible with
// probability > 0.288 for every dimension, so this terminates after a
// handful of attempts.
inline BitMatrix random_invertible_matrix(std::size_t dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("random_invertible_matrix: dim < 1");
    for (;;) {
        BitMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                m.at(i, j) = static_cast<std::uint8_t>(rng.random_bit());
        if (gf2_rank(m) == dim) return m;
    }
}

}  // namespace wiretap
