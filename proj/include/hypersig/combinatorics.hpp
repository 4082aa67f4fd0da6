#pragma once

#include "hypersig/rational.hpp"

#include <cstddef>

namespace hypersig {

/// Exact binomial coefficient C(n, k); zero when k > n.
Int binomial(std::size_t n, std::size_t k);

/// Stirling number of the second kind S(m, k): partitions of an m-set into k
/// nonempty classes, via S(m,k) = k S(m-1,k) + S(m-1,k-1).
Int stirling2(std::size_t m, std::size_t k);

Int factorial(std::size_t n);

}  // namespace hypersig
