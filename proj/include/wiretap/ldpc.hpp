#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wiretap/bch.hpp"
#include "wiretap/bits.hpp"

namespace wiretap {

struct LdpcDecodeResult {
    DecodeOutcome out;
    std::vector<double> llr;  // final per-bit posteriors, length n
};

// Sparse parity-check code with a systematic encoder (message bits in
// positions 0..k-1) and a log-domain sum-product decoder. The committed
// fixture matrix has its columns pre-permuted so the last n-k columns
// form an invertible submatrix; the loader re-derives the dense parity
// solver from the sparse description and rejects anything inconsistent.
class LdpcCode {
  public:
    // Plain-text sparse format: '#' comment lines, then one line per
    // check node listing its variable indices.
    static LdpcCode load_pchk(const std::string& path, int n) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("LdpcCode: cannot open fixture " + path);
        std::vector<std::vector<int>> checks;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::vector<int> vs;
            int v;
            while (ls >> v) {
                if (v < 0 || v >= n)
                    throw std::runtime_error("LdpcCode: variable index out of range");
                vs.push_back(v);
            }
            if (!vs.empty()) checks.push_back(std::move(vs));
        }
        if (checks.empty()) throw std::runtime_error("LdpcCode: empty fixture " + path);
        return LdpcCode(n, std::move(checks));
    }

    LdpcCode(int n, std::vector<std::vector<int>> checks)
        : n_(n), m_(static_cast<int>(checks.size())), k_(n - m_) {
        if (k_ <= 0) throw std::invalid_argument("LdpcCode: no message positions");
        // CSR adjacency with a shared edge numbering
        check_start_.reserve(static_cast<std::size_t>(m_ + 1));
        check_start_.push_back(0);
        for (const auto& vs : checks) {
            for (int v : vs) edge_var_.push_back(v);
            check_start_.push_back(static_cast<int>(edge_var_.size()));
        }
        var_start_.assign(static_cast<std::size_t>(n_ + 1), 0);
        for (int v : edge_var_) ++var_start_[static_cast<std::size_t>(v + 1)];
        for (int i = 0; i < n_; ++i)
            var_start_[static_cast<std::size_t>(i + 1)] +=
                var_start_[static_cast<std::size_t>(i)];
        var_edges_.resize(edge_var_.size());
        {
            std::vector<int> fill(var_start_.begin(), var_start_.end() - 1);
            for (int e = 0; e < static_cast<int>(edge_var_.size()); ++e)
                var_edges_[static_cast<std::size_t>(
                    fill[static_cast<std::size_t>(edge_var_[static_cast<std::size_t>(e)])]++)] = e;
        }
        max_check_degree_ = 0;
        for (int c = 0; c < m_; ++c)
            max_check_degree_ = std::max(max_check_degree_, check_degree(c));
        derive_parity_solver(checks);
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int num_checks() const { return m_; }
    double rate() const { return static_cast<double>(k_) / n_; }

    int check_degree(int c) const {
        return check_start_[static_cast<std::size_t>(c + 1)] -
               check_start_[static_cast<std::size_t>(c)];
    }

    int column_weight(int v) const {
        return var_start_[static_cast<std::size_t>(v + 1)] -
               var_start_[static_cast<std::size_t>(v)];
    }

    BitVec encode(const BitVec& msg) const {
        if (static_cast<int>(msg.size()) != k_)
            throw std::invalid_argument("LdpcCode::encode: message length mismatch");
        BitVec cw(static_cast<std::size_t>(n_), 0);
        std::copy(msg.begin(), msg.end(), cw.begin());
        // pack the message and take row-wise parities against the solver
        std::vector<std::uint64_t> packed(words_per_row_, 0);
        for (int i = 0; i < k_; ++i)
            if (msg[static_cast<std::size_t>(i)])
                packed[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63);
        for (int r = 0; r < m_; ++r) {
            const std::uint64_t* row = &solver_[static_cast<std::size_t>(r) * words_per_row_];
            std::uint64_t acc = 0;
            for (std::size_t w = 0; w < words_per_row_; ++w) acc ^= row[w] & packed[w];
            cw[static_cast<std::size_t>(k_ + r)] =
                static_cast<std::uint8_t>(__builtin_popcountll(acc) & 1);
        }
        return cw;
    }

    bool is_codeword(const BitVec& word) const {
        if (static_cast<int>(word.size()) != n_) return false;
        for (int c = 0; c < m_; ++c) {
            std::uint8_t par = 0;
            for (int e = check_start_[static_cast<std::size_t>(c)];
                 e < check_start_[static_cast<std::size_t>(c + 1)]; ++e)
                par ^= word[static_cast<std::size_t>(edge_var_[static_cast<std::size_t>(e)])];
            if (par) return false;
        }
        return true;
    }

    // Log-domain sum-product (tanh rule) with flooding schedule.
    // Messages are clamped to +-25; stops early once every parity check
    // is satisfied by the current hard decisions. Positive LLR means
    // bit 0 is more likely.
    LdpcDecodeResult decode(const std::vector<double>& llr_in, int max_iters) const {
        if (static_cast<int>(llr_in.size()) != n_)
            throw std::invalid_argument("LdpcCode::decode: llr length mismatch");
        if (max_iters < 1)
            throw std::invalid_argument("LdpcCode::decode: max_iters must be >= 1");
        bool any_info = false;
        for (double l : llr_in) {
            if (!std::isfinite(l))
                throw std::invalid_argument("LdpcCode::decode: non-finite LLR");
            any_info = any_info || l != 0.0;
        }

        LdpcDecodeResult res;
        res.llr = llr_in;
        if (!any_info) {
            // an all-zero input carries no information; the all-zero hard
            // word would satisfy every check, so flag the block instead
            res.out.bits.assign(static_cast<std::size_t>(k_), 0);
            res.out.success = false;
            return res;
        }

        BitVec hard(static_cast<std::size_t>(n_));
        auto harden = [&](const std::vector<double>& l) {
            for (int i = 0; i < n_; ++i)
                hard[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)] < 0.0;
        };
        harden(res.llr);
        if (is_codeword(hard)) {
            res.out.bits.assign(hard.begin(), hard.begin() + k_);
            res.out.success = true;
            res.out.iterations = 0;
            finish_corrected(llr_in, hard, res);
            return res;
        }

        const std::size_t ne = edge_var_.size();
        std::vector<double> v2c(ne), c2v(ne, 0.0);
        for (std::size_t e = 0; e < ne; ++e)
            v2c[e] = clamp25(llr_in[static_cast<std::size_t>(edge_var_[e])]);

        std::vector<double> th(static_cast<std::size_t>(max_check_degree_));
        std::vector<double> fwd(static_cast<std::size_t>(max_check_degree_));
        std::vector<double> bwd(static_cast<std::size_t>(max_check_degree_));

        for (int iter = 1; iter <= max_iters; ++iter) {
            // check-node update via forward/backward partial products of
            // tanh(v2c/2)
            for (int c = 0; c < m_; ++c) {
                const int s = check_start_[static_cast<std::size_t>(c)];
                const int deg = check_start_[static_cast<std::size_t>(c + 1)] - s;
                for (int j = 0; j < deg; ++j)
                    th[static_cast<std::size_t>(j)] =
                        std::tanh(0.5 * v2c[static_cast<std::size_t>(s + j)]);
                fwd[0] = th[0];
                for (int j = 1; j < deg; ++j)
                    fwd[static_cast<std::size_t>(j)] =
                        fwd[static_cast<std::size_t>(j - 1)] * th[static_cast<std::size_t>(j)];
                bwd[static_cast<std::size_t>(deg - 1)] = th[static_cast<std::size_t>(deg - 1)];
                for (int j = deg - 2; j >= 0; --j)
                    bwd[static_cast<std::size_t>(j)] =
                        bwd[static_cast<std::size_t>(j + 1)] * th[static_cast<std::size_t>(j)];
                for (int j = 0; j < deg; ++j) {
                    double ex = 1.0;
                    if (j > 0) ex *= fwd[static_cast<std::size_t>(j - 1)];
                    if (j < deg - 1) ex *= bwd[static_cast<std::size_t>(j + 1)];
                    ex = std::min(kTanhCap, std::max(-kTanhCap, ex));
                    c2v[static_cast<std::size_t>(s + j)] = clamp25(2.0 * std::atanh(ex));
                }
            }
            // variable-node update and posterior
            for (int v = 0; v < n_; ++v) {
                double post = llr_in[static_cast<std::size_t>(v)];
                for (int i = var_start_[static_cast<std::size_t>(v)];
                     i < var_start_[static_cast<std::size_t>(v + 1)]; ++i)
                    post += c2v[static_cast<std::size_t>(var_edges_[static_cast<std::size_t>(i)])];
                res.llr[static_cast<std::size_t>(v)] = post;
                for (int i = var_start_[static_cast<std::size_t>(v)];
                     i < var_start_[static_cast<std::size_t>(v + 1)]; ++i) {
                    const int e = var_edges_[static_cast<std::size_t>(i)];
                    v2c[static_cast<std::size_t>(e)] =
                        clamp25(post - c2v[static_cast<std::size_t>(e)]);
                }
            }
            harden(res.llr);
            if (is_codeword(hard)) {
                res.out.bits.assign(hard.begin(), hard.begin() + k_);
                res.out.success = true;
                res.out.iterations = iter;
                finish_corrected(llr_in, hard, res);
                return res;
            }
        }

        res.out.bits.assign(hard.begin(), hard.begin() + k_);
        res.out.success = false;
        res.out.iterations = max_iters;
        return res;
    }

  private:
    static constexpr double kTanhCap = 1.0 - 1e-12;

    static double clamp25(double x) { return std::min(25.0, std::max(-25.0, x)); }

    void finish_corrected(const std::vector<double>& llr_in, const BitVec& hard,
                          LdpcDecodeResult& res) const {
        int flips = 0;
        for (int i = 0; i < n_; ++i)
            flips += (llr_in[static_cast<std::size_t>(i)] < 0.0) !=
                     (hard[static_cast<std::size_t>(i)] != 0);
        res.out.corrected = flips;
    }

    // Gauss-Jordan reduction of H with pivots forced onto the last m
    // columns; afterwards row r reads  p_r = sum(solver_row_r * message).
    void derive_parity_solver(const std::vector<std::vector<int>>& checks) {
        const std::size_t words_full = static_cast<std::size_t>((n_ + 63) / 64);
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(m_) * words_full, 0);
        auto bit = [&](int r, int c) -> std::uint64_t {
            return (rows[static_cast<std::size_t>(r) * words_full +
                         static_cast<std::size_t>(c >> 6)] >>
                    (c & 63)) &
                   1ULL;
        };
        for (int r = 0; r < m_; ++r)
            for (int v : checks[static_cast<std::size_t>(r)])
                rows[static_cast<std::size_t>(r) * words_full +
                     static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);

        for (int j = 0; j < m_; ++j) {
            const int col = k_ + j;
            int pivot = -1;
            for (int r = j; r < m_; ++r)
                if (bit(r, col)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0)
                throw std::runtime_error(
                    "LdpcCode: parity submatrix singular; fixture corrupt");
            if (pivot != j)
                for (std::size_t w = 0; w < words_full; ++w)
                    std::swap(rows[static_cast<std::size_t>(j) * words_full + w],
                              rows[static_cast<std::size_t>(pivot) * words_full + w]);
            for (int r = 0; r < m_; ++r) {
                if (r != j && bit(r, col))
                    for (std::size_t w = 0; w < words_full; ++w)
                        rows[static_cast<std::size_t>(r) * words_full + w] ^=
                            rows[static_cast<std::size_t>(j) * words_full + w];
            }
        }

        words_per_row_ = static_cast<std::size_t>((k_ + 63) / 64);
        solver_.assign(static_cast<std::size_t>(m_) * words_per_row_, 0);
        for (int r = 0; r < m_; ++r)
            for (std::size_t w = 0; w < words_per_row_; ++w)
                solver_[static_cast<std::size_t>(r) * words_per_row_ + w] =
                    rows[static_cast<std::size_t>(r) * words_full + w];
        // mask tail bits beyond k in the last word
        if (k_ & 63) {
            const std::uint64_t mask = (1ULL << (k_ & 63)) - 1;
            for (int r = 0; r < m_; ++r)
                solver_[static_cast<std::size_t>(r) * words_per_row_ + words_per_row_ - 1] &=
                    mask;
        }
    }

    int n_, m_, k_;
    std::vector<int> check_start_;  // CSR over checks
    std::vector<int> edge_var_;     // edge -> variable
    std::vector<int> var_start_;    // CSR over variables
    std::vector<int> var_edges_;    // variable -> edge ids
    int max_check_degree_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> solver_;
};

// Loads the committed LDPC(1056, 880) matrix and checks the properties
// the rest of the toolkit relies on.
inline LdpcCode ldpc_construct_fixture(const std::string& path) {
    LdpcCode code = LdpcCode::load_pchk(path, 1056);
    if (code.n() != 1056 || code.k() != 880 || code.num_checks() != 176)
        throw std::runtime_error("ldpc_construct_fixture: unexpected dimensions");
    for (int v = 0; v < code.n(); ++v)
        if (code.column_weight(v) != 3)
            throw std::runtime_error("ldpc_construct_fixture: column weight != 3");
    return code;
}

}  // namespace wiretap
