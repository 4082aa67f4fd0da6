#pragma once

#include "hypersig/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace hypersig {

/// Dense matrix of exact rationals, row-major. Equality is exact entrywise.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t n);
    /// Row-major construction from integer literals, e.g. {{1,0},{0,1}}.
    static RatMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static RatMatrix column(const RatVector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const { return data_; }

    RatMatrix transpose() const;
    RatVector flatten() const { return data_; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }
    /// Lexicographic on (rows, cols, entries); used for canonical orderings.
    friend bool operator<(const RatMatrix& a, const RatMatrix& b);

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, const RatMatrix& a);

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

/// Hilbert-Schmidt pairing Tr[A^T B] = sum_ij A_ij B_ij.
Rational hs_dot(const RatMatrix& a, const RatMatrix& b);

/// Outer product u v^T of two column vectors (n x 1 matrices or plain vectors).
RatMatrix outer(const RatVector& u, const RatVector& v);

}  // namespace hypersig
