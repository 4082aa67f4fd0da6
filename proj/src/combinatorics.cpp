#include "hypersig/combinatorics.hpp"

#include <vector>

namespace hypersig {

Int binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r *= static_cast<unsigned long>(n - i);
        r /= static_cast<unsigned long>(i + 1);
    }
    return r;
}

Int stirling2(std::size_t m, std::size_t k) {
    if (k > m) return 0;
    if (m == 0) return 1;  // S(0,0) = 1; k > m handled above
    if (k == 0) return 0;
    std::vector<Int> row(k + 1, 0);
    row[0] = 1;  // S(0,0)
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            row[j] = Int(static_cast<unsigned long>(j)) * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    return row[k];
}

Int factorial(std::size_t n) {
    Int r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
    return r;
}

}  // namespace hypersig
