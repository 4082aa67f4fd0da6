#pragma once

#include "hypersig/matrix.hpp"

#include <optional>

namespace hypersig {

/// Exact matrix rank via Gaussian elimination over the rationals.
std::size_t rank(const RatMatrix& m);

/// Solves A x = b exactly when A has full column rank and the system is
/// consistent; returns nullopt otherwise (dependent columns or no solution).
std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b);

/// Incremental row-echelon basis over the rationals; used to test vectors for
/// linear independence against a growing set with cheap push/pop.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    std::size_t size() const { return rows_.size(); }

    /// Reduces v against the basis. If independent, appends the reduced row
    /// and returns true; if v is in the span, returns false and leaves the
    /// basis unchanged.
    bool push(const RatVector& v);
    void pop();

    /// True iff v lies in the current span.
    bool contains(const RatVector& v) const;

    /// Most recently added (pivot, normalized row) pair.
    const std::pair<std::size_t, RatVector>& back() const { return rows_.back(); }

private:
    RatVector reduce(const RatVector& v) const;
    std::size_t dim_;
    std::vector<std::pair<std::size_t, RatVector>> rows_;  // (pivot, normalized row)
};

}  // namespace hypersig
