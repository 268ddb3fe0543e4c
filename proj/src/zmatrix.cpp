#include "cuspforge/zmatrix.hpp"

#include <algorithm>

namespace cuspforge {

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
    CUSPFORGE_CHECK(cols_ == o.rows_);
    ZMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& v = (*this)(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

ZMatrix ZMatrix::transpose() const {
    ZMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ZMatrix ZMatrix::stacked(const ZMatrix& o) const {
    CUSPFORGE_CHECK(cols_ == o.cols_ || rows_ == 0 || o.rows_ == 0);
    std::size_t cols = rows_ ? cols_ : o.cols_;
    ZMatrix r(rows_ + o.rows_, cols);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
        for (std::size_t j = 0; j < cols; ++j) r(rows_ + i, j) = o(i, j);
    return r;
}

bool ZMatrix::is_zero_row(std::size_t r) const {
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(r, j) != 0) return false;
    return true;
}

std::vector<Int> ZMatrix::row(std::size_t r) const {
    std::vector<Int> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(r, j);
    return out;
}

namespace {

void add_multiple_row(ZMatrix& m, std::size_t dst, std::size_t src,
                      const Int& q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void negate_row(ZMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Shared HNF worker; U (if given) accumulates the row operations.
ZMatrix hnf_impl(ZMatrix work, ZMatrix* U) {
    std::size_t n = work.rows(), m = work.cols();
    if (U) *U = ZMatrix::identity(n);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        // Eliminate below until at most one nonzero entry remains in col c.
        for (;;) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i) {
                if (work(i, c) == 0) continue;
                if (best == n || abs(work(i, c)) < abs(work(best, c))) best = i;
            }
            if (best == n) break;  // column is zero below r
            swap_rows(work, r, best);
            if (U) swap_rows(*U, r, best);
            bool more = false;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (work(i, c) == 0) continue;
                Int q = -fdiv(work(i, c), work(r, c));
                add_multiple_row(work, i, r, q);
                if (U) add_multiple_row(*U, i, r, q);
                if (work(i, c) != 0) more = true;
            }
            if (!more) break;
        }
        if (work(r, c) == 0) continue;
        if (work(r, c) < 0) {
            negate_row(work, r);
            if (U) negate_row(*U, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = -fdiv(work(i, c), work(r, c));
            if (q != 0) {
                add_multiple_row(work, i, r, q);
                if (U) add_multiple_row(*U, i, r, q);
            }
        }
        ++r;
    }
    return work;
}

}  // namespace

ZMatrix ZMatrix::hnf() const {
    ZMatrix h = hnf_impl(*this, nullptr);
    std::size_t nz = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!h.is_zero_row(i)) ++nz;
    ZMatrix out(nz, h.cols());
    std::size_t k = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!h.is_zero_row(i)) {
            for (std::size_t j = 0; j < h.cols(); ++j) out(k, j) = h(i, j);
            ++k;
        }
    return out;
}

ZMatrix ZMatrix::hnf_with_transform(ZMatrix* transform) const {
    return hnf_impl(*this, transform);
}

ZMatrix ZMatrix::left_kernel() const {
    ZMatrix U;
    ZMatrix h = hnf_with_transform(&U);
    std::size_t nz = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (h.is_zero_row(i)) ++nz;
    ZMatrix out(nz, rows_);
    std::size_t k = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (h.is_zero_row(i)) {
            for (std::size_t j = 0; j < rows_; ++j) out(k, j) = U(i, j);
            ++k;
        }
    return out;
}

std::size_t ZMatrix::rank() const { return hnf().rows(); }

Int ZMatrix::det() const {
    CUSPFORGE_CHECK(rows_ == cols_);
    // Fraction-free Gaussian elimination (Bareiss).
    ZMatrix w = *this;
    Int sign = 1, prev = 1;
    std::size_t n = rows_;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(w, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = divexact(w(i, j) * w(k, k) - w(i, k) * w(k, j), prev);
        prev = w(k, k);
    }
    return n == 0 ? Int(1) : sign * w(n - 1, n - 1);
}

std::optional<std::vector<Int>> ZMatrix::solve_left(
    const std::vector<Int>& b) const {
    CUSPFORGE_CHECK(b.size() == cols_);
    ZMatrix U;
    ZMatrix h = hnf_with_transform(&U);
    std::vector<Int> residue = b;
    std::vector<Int> coeff(rows_, Int(0));
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (h.is_zero_row(i)) continue;
        std::size_t c = 0;
        while (c < cols_ && h(i, c) == 0) ++c;
        if (residue[c] == 0) continue;
        if (!divides(h(i, c), residue[c])) return std::nullopt;
        Int q = divexact(residue[c], h(i, c));
        for (std::size_t j = 0; j < cols_; ++j) residue[j] -= q * h(i, j);
        coeff[i] = q;
    }
    for (const Int& v : residue)
        if (v != 0) return std::nullopt;
    return mul_row(coeff, U);
}

ZMatrix ZMatrix::smith(ZMatrix* Uo, ZMatrix* Vo) const {
    std::size_t n = rows_, m = cols_;
    ZMatrix A = *this;
    ZMatrix U = ZMatrix::identity(n), V = ZMatrix::identity(m);
    auto col_add = [&](ZMatrix& M, std::size_t dst, std::size_t src,
                      const Int& q) {
        for (std::size_t i = 0; i < M.rows(); ++i) M(i, dst) += q * M(i, src);
    };
    auto col_swap = [&](ZMatrix& M, std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < M.rows(); ++i) std::swap(M(i, a), M(i, b));
    };
    std::size_t t = std::min(n, m);
    for (std::size_t k = 0; k < t; ++k) {
        for (;;) {
            // Find the entry of smallest absolute value in the remaining block.
            std::size_t pi = n, pj = m;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < m; ++j)
                    if (A(i, j) != 0 &&
                        (pi == n || abs(A(i, j)) < abs(A(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) break;  // block is zero
            swap_rows(A, k, pi);
            swap_rows(U, k, pi);
            col_swap(A, k, pj);
            col_swap(V, k, pj);
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i)
                if (A(i, k) != 0) {
                    Int q = -fdiv(A(i, k), A(k, k));
                    add_multiple_row(A, i, k, q);
                    add_multiple_row(U, i, k, q);
                    if (A(i, k) != 0) clean = false;
                }
            for (std::size_t j = k + 1; j < m; ++j)
                if (A(k, j) != 0) {
                    Int q = -fdiv(A(k, j), A(k, k));
                    col_add(A, j, k, q);
                    col_add(V, j, k, q);
                    if (A(k, j) != 0) clean = false;
                }
            if (!clean) continue;
            // Ensure divisibility of the remaining block by the pivot.
            bool fixed = false;
            for (std::size_t i = k + 1; i < n && !fixed; ++i)
                for (std::size_t j = k + 1; j < m && !fixed; ++j)
                    if (!divides(A(k, k), A(i, j))) {
                        add_multiple_row(A, k, i, Int(1));
                        add_multiple_row(U, k, i, Int(1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (A(k, k) < 0) {
            negate_row(A, k);
            negate_row(U, k);
        }
    }
    if (Uo) *Uo = U;
    if (Vo) *Vo = V;
    return A;
}

std::vector<Int> mul_row(const std::vector<Int>& x, const ZMatrix& A) {
    CUSPFORGE_CHECK(x.size() == A.rows());
    std::vector<Int> out(A.cols(), Int(0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < A.cols(); ++j) out[j] += x[i] * A(i, j);
    }
    return out;
}

}  // namespace cuspforge
