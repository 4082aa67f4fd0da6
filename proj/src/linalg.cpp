#include "hypersig/linalg.hpp"

namespace hypersig {

std::size_t rank(const RatMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<RatVector> a(rows, RatVector(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        const Rational inv = Rational(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b) {
    const std::size_t rows = a.rows(), k = a.cols();
    if (b.size() != rows) throw std::invalid_argument("solve_unique: size mismatch");

    // augmented [A | b], full reduction
    std::vector<RatVector> m(rows, RatVector(k + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a.at(i, j);
        m[i][k] = b[i];
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) return std::nullopt;  // column without pivot: not full column rank
        std::swap(m[r], m[piv]);
        const Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j <= k; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!m[i][k].is_zero()) return std::nullopt;  // inconsistent
    }
    RatVector x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = m[i][k];
    return x;
}

RatVector EchelonBasis::reduce(const RatVector& v) const {
    RatVector w = v;
    for (const auto& [p, row] : rows_) {
        if (w[p].is_zero()) continue;
        const Rational f = w[p];
        for (std::size_t j = 0; j < dim_; ++j) w[j] -= f * row[j];
    }
    return w;
}

bool EchelonBasis::push(const RatVector& v) {
    if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
    RatVector w = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && w[p].is_zero()) ++p;
    if (p == dim_) return false;
    const Rational inv = Rational(1) / w[p];
    for (std::size_t j = 0; j < dim_; ++j) w[j] *= inv;
    rows_.emplace_back(p, std::move(w));
    return true;
}

void EchelonBasis::pop() { rows_.pop_back(); }

bool EchelonBasis::contains(const RatVector& v) const {
    RatVector w = reduce(v);
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace hypersig
