#pragma once

// Dense integer matrices over GMP integers with the lattice normal forms
// used throughout the library: Hermite normal form (row-style, acting on
// row spans), Smith normal form with transforms, integer kernels and exact
// linear solving. All matrices here are tiny (at most 8x8), so simple
// gcd-elimination algorithms are used.

#include <optional>
#include <vector>

#include "cuspforge/numeric.hpp"

namespace cuspforge {

class ZMatrix {
  public:
    ZMatrix() : rows_(0), cols_(0) {}
    ZMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static ZMatrix identity(std::size_t n) {
        ZMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const {
        return a_[r * cols_ + c];
    }

    bool operator==(const ZMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const ZMatrix& o) const { return !(*this == o); }

    ZMatrix operator*(const ZMatrix& o) const;
    ZMatrix transpose() const;

    // Appends the rows of `o` below this matrix (same column count).
    ZMatrix stacked(const ZMatrix& o) const;

    bool is_zero_row(std::size_t r) const;

    // Row-style Hermite normal form of the row span: pivots move left to
    // right with positive pivot entries, entries above each pivot reduced
    // into [0, pivot), zero rows trimmed. The result is the canonical basis
    // of the lattice spanned by the rows.
    ZMatrix hnf() const;

    // As hnf(), but zero rows are kept in place (below the nonzero rows)
    // and *transform is set to a unimodular U with U * this = result.
    ZMatrix hnf_with_transform(ZMatrix* transform) const;

    // Basis (as rows) of the left kernel { x : x * this = 0 }.
    ZMatrix left_kernel() const;

    std::size_t rank() const;

    // Determinant (square matrices only).
    Int det() const;

    // Solves x * this = b over the integers, if possible.
    std::optional<std::vector<Int>> solve_left(const std::vector<Int>& b) const;

    // Is b in the row span (over Z)?
    bool row_span_contains(const std::vector<Int>& b) const {
        return solve_left(b).has_value();
    }

    // Smith normal form: fills U (rows x rows) and V (cols x cols) with
    // unimodular matrices such that U * this * V = D, D diagonal with
    // d_1 | d_2 | ... >= 0. Returns D.
    ZMatrix smith(ZMatrix* U, ZMatrix* V) const;

    std::vector<Int> row(std::size_t r) const;

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Multiplies a row vector by a matrix: x * A.
std::vector<Int> mul_row(const std::vector<Int>& x, const ZMatrix& A);

}  // namespace cuspforge
