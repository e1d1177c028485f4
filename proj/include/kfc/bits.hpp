#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kfc {

// Packed bit vector over F2.
struct BitVec {
    int n = 0;
    std::vector<uint64_t> w;

    BitVec() = default;
    explicit BitVec(int bits) : n(bits), w((bits + 63) / 64, 0) {}

    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
    }
    void flip(int i) { w[i >> 6] ^= uint64_t(1) << (i & 63); }
    void xor_with(const BitVec& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    bool any() const {
        for (uint64_t x : w) if (x) return true;
        return false;
    }
    int lowest_set() const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k]) return int(k * 64 + __builtin_ctzll(w[k]));
        return -1;
    }
    bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
};

// Dense F2 matrix, rows packed.
struct F2Matrix {
    int rows = 0, cols = 0;
    std::vector<BitVec> row;

    F2Matrix() = default;
    F2Matrix(int r, int c) : rows(r), cols(c), row(r, BitVec(c)) {}

    bool get(int i, int j) const { return row[i].get(j); }
    void set(int i, int j, bool v) { row[i].set(j, v); }

    static F2Matrix identity(int n) {
        F2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    BitVec mul(const BitVec& x) const {
        if (x.n != cols) throw std::invalid_argument("F2Matrix::mul: dimension mismatch");
        BitVec y(rows);
        for (int i = 0; i < rows; ++i) {
            int p = 0;
            for (size_t k = 0; k < row[i].w.size(); ++k) p ^= __builtin_popcountll(row[i].w[k] & x.w[k]) & 1;
            y.set(i, p);
        }
        return y;
    }
};

struct AffineSolution {
    BitVec particular;           // one x with Ax = b
    std::vector<BitVec> kernel;  // basis of {x : Ax = 0}
};

// Certificate of inconsistency: a combination lambda of the input rows with
// lambda^T A = 0 and lambda^T b = 1.
struct InconsistencyRow {
    BitVec lambda;
};

struct AffineResult {
    std::optional<AffineSolution> sol;
    std::optional<InconsistencyRow> why_not;
};

// Exact affine solve over F2 by Gaussian elimination on [A | b], tracking the
// row operations so inconsistency comes with a proof-carrying certificate.
inline AffineResult solve_affine_f2(const F2Matrix& A, const BitVec& b) {
    if (b.n != A.rows) throw std::invalid_argument("solve_affine_f2: dimension mismatch");
    int m = A.rows, n = A.cols;
    std::vector<BitVec> rows(A.row);
    std::vector<BitVec> track;  // track[i] = combination of original rows forming rows[i]
    BitVec rhs = b;
    std::vector<bool> rhsbit(m);
    for (int i = 0; i < m; ++i) rhsbit[i] = rhs.get(i);
    track.reserve(m);
    for (int i = 0; i < m; ++i) {
        BitVec t(m);
        t.set(i, true);
        track.push_back(t);
    }
    std::vector<int> pivot_col_of_row;
    std::vector<int> pivot_row_of_col(n, -1);
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (rows[i].get(c)) { p = i; break; }
        if (p < 0) continue;
        std::swap(rows[p], rows[r]);
        std::swap(track[p], track[r]);
        std::swap(rhsbit[p], rhsbit[r]);
        for (int i = 0; i < m; ++i) {
            if (i != r && rows[i].get(c)) {
                rows[i].xor_with(rows[r]);
                track[i].xor_with(track[r]);
                rhsbit[i] = rhsbit[i] ^ rhsbit[r];
            }
        }
        pivot_row_of_col[c] = r;
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i) {
        if (rhsbit[i]) {
            AffineResult res;
            res.why_not = InconsistencyRow{track[i]};
            return res;
        }
    }
    AffineSolution s;
    s.particular = BitVec(n);
    for (int i = 0; i < r; ++i)
        if (rhsbit[i]) s.particular.set(pivot_col_of_row[i], true);
    for (int c = 0; c < n; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        BitVec k(n);
        k.set(c, true);
        for (int i = 0; i < r; ++i)
            if (rows[i].get(c)) k.set(pivot_col_of_row[i], true);
        s.kernel.push_back(k);
    }
    AffineResult res;
    res.sol = std::move(s);
    return res;
}

}  // namespace kfc
