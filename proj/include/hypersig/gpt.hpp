#pragma once

#include "hypersig/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hypersig {

/// Reversible channel acting on states as S -> L S R^T (transposed afterwards
/// when `swap_after` is set); effects transform the same way, which preserves
/// the trace pairing for orthogonal L, R.
struct ChannelAction {
    RatMatrix left, right;
    bool swap_after = false;

    RatMatrix apply(const RatMatrix& m) const;
};

/// A GPT system: extremal states, extremal normalized effects, the unit
/// effect, and its reversible channel set.
struct SystemSpec {
    std::size_t linear_dim = 0;
    std::vector<RatMatrix> extremal_states;
    std::vector<RatMatrix> extremal_effects;
    RatMatrix unit_effect;
    std::vector<ChannelAction> channels;

    /// Checks Tr[unit^T w] = 1 and Tr[e^T w] >= 0 for all extremal pairs, and
    /// that every channel permutes the extremal state and effect lists.
    /// Throws std::logic_error on violation.
    void validate() const;
};

/// Probability weights over normalized effects, summing to the unit effect.
struct Measurement {
    struct Entry {
        Rational weight;
        std::size_t effect_index;
    };
    std::vector<Entry> entries;

    std::size_t outcomes() const { return entries.size(); }
};

/// m x n row-stochastic matrix of exact conditional probabilities p(y|x).
struct CorrelationMatrix {
    std::size_t m = 0, n = 0;
    RatMatrix p;

    static CorrelationMatrix from_matrix(RatMatrix p);  // validates
    bool operator==(const CorrelationMatrix& o) const { return p == o.p; }
};

class ModelInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Trace-rule probability Tr[effect^T state].
Rational probability(const RatMatrix& effect, const RatMatrix& state);

/// Outer products w_i (x) w_j^T for elementary column vectors; the bipartite
/// index convention is 4*i + j.
RatMatrix tensor_state(const RatMatrix& a, const RatMatrix& b);
RatMatrix tensor_effect(const RatMatrix& a, const RatMatrix& b);

/// p(y|x) = w_y Tr[E_y^T Omega_x]. Throws ModelInconsistency if any entry is
/// negative, and std::invalid_argument if the measurement does not sum to the
/// unit effect.
CorrelationMatrix correlation(const std::vector<RatMatrix>& states, const Measurement& meas,
                              const std::vector<RatMatrix>& effects, const RatMatrix& unit);

/// True iff some strictly positive weight vector p satisfies
/// sum_y p_y E_y = unit (LP: maximize the minimum weight, demand optimum > 0).
bool measurement_supported(const std::vector<RatMatrix>& effects, const RatMatrix& unit);

/// All extremal measurements supported by extremal normalized effects with
/// n_min..n_max outcomes: subsets that are linearly independent and give the
/// unit effect a strictly positive (necessarily unique) decomposition.
/// Output order is lexicographic on the sorted effect-index tuples; `threads`
/// only partitions the search, the result is identical for any thread count.
std::vector<Measurement> enumerate_extremal_measurements(const SystemSpec& sys,
                                                         std::size_t n_min, std::size_t n_max,
                                                         unsigned threads = 1);

}  // namespace hypersig
