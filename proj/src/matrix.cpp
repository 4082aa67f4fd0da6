#include "hypersig/matrix.hpp"

namespace hypersig {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    RatMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("RatMatrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

RatMatrix RatMatrix::column(const RatVector& v) {
    RatMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool operator<(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        if (a.data_[i] != b.data_[i]) return a.data_[i] < b.data_[i];
    }
    return false;
}

namespace {
void require_same_shape(const RatMatrix& a, const RatMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string("RatMatrix: shape mismatch in ") + op);
}
}  // namespace

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    require_same_shape(a, b, "operator+");
    RatMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    require_same_shape(a, b, "operator-");
    RatMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix: shape mismatch in operator*");
    RatMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                r.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return r;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
    return r;
}

Rational hs_dot(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hs_dot: shape mismatch");
    Rational acc;
    for (std::size_t i = 0; i < a.entries().size(); ++i) acc += a.entries()[i] * b.entries()[i];
    return acc;
}

RatMatrix outer(const RatVector& u, const RatVector& v) {
    RatMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m.at(i, j) = u[i] * v[j];
    return m;
}

}  // namespace hypersig
