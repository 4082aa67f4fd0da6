#pragma once

#include "hypersig/gpt.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypersig {

class ConstructionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// One of the eight reversible channels of the elementary square system:
/// rotation (sign +) or reflection (sign -) by k quarter turns.
struct ElementaryChannel {
    int k = 0;
    int sign = +1;
    RatMatrix matrix;  // 3x3, entries in {-1,0,1}
};

/// The elementary square system: 4 states, 4 normalized effects, unit effect
/// (0,0,1), and the dihedral group of 8 reversible channels.
SystemSpec build_elementary();

std::vector<ElementaryChannel> elementary_channels();

/// The bipartite extension: 24 extremal states and 24 extremal normalized
/// effects (16 factorized + 8 entangled each), unit effect with a single 1 in
/// the corner. Construction is cross-checked by enumerating the vertices of
/// the state and effect polytopes; any mismatch throws ConstructionError.
struct BipartiteSystem {
    std::vector<RatMatrix> states;   // 24, index 4i+j for the factorized block
    std::vector<RatMatrix> effects;  // 24
    RatMatrix unit_effect;           // 3x3
};

BipartiteSystem build_bipartite();

/// Composite reversible channel W^swap (U_l^{s1} (x) U_r^{s2}) together with
/// the permutations it induces on the 24 extremal states and effects.
struct BipartiteChannel {
    bool swap = false;
    int left_k = 0, right_k = 0;
    int left_sign = +1, right_sign = +1;
    ChannelAction action;
    std::array<std::uint8_t, 24> state_perm{};
    std::array<std::uint8_t, 24> effect_perm{};

    std::string name() const;
};

/// All 128 composite reversible channels, with verified group closure and
/// verified preservation of the factorized/entangled blocks.
std::vector<BipartiteChannel> bipartite_group(const BipartiteSystem& sys);

/// Result of the self-consistency circuit for one entangled pair (x, y):
/// the circuit contracts two copies of Omega_x with two copies of E_y over
/// the sixteen insertion patterns of U = Omega_x E_y.
struct ConsistencyReport {
    int x = 0, y = 0;                // both in [16, 23]
    bool circuit_applicable = true;  // U = Omega_x E_y lies in the elementary group
    bool admissible = false;
    Rational worst_value;
};

std::vector<ConsistencyReport> consistency_scan(const BipartiteSystem& sys);

enum class ModelFamily { PR, HS, HybridA, HybridB, Frozen };

/// A self-consistent restriction of the bipartite system.
struct ToyModel {
    std::string name;
    ModelFamily family = ModelFamily::PR;
    int frozen_index = -1;  // entangled index for Frozen models
    std::vector<int> state_indices;
    std::vector<int> effect_indices;
    /// True when adding any further entangled index pair (k, k) breaks the
    /// pairwise admissibility from the consistency scan.
    bool maximal = false;

    bool allows_state(int i) const;
    bool allows_effect(int j) const;
};

/// The PR, HS, two Hybrid and eight Frozen models, derived from the scan's
/// admissible pair set and annotated with honestly computed maximality.
std::vector<ToyModel> classify_models(const std::vector<ConsistencyReport>& scan);

/// Channels whose induced permutations map the model's state and effect index
/// sets onto themselves.
std::vector<std::size_t> preserving_channels(const ToyModel& model,
                                             const std::vector<BipartiteChannel>& group);

/// The model's reversible channel set: preserving channels that also keep
/// every closed planar circuit over two or three model states non-negative,
/// closed under composition (the largest such subgroup).
std::vector<std::size_t> model_reversible(const ToyModel& model, const BipartiteSystem& sys,
                                          const std::vector<BipartiteChannel>& group);

/// Equivalence classes of measurements under the channel group's effect
/// permutations. The canonical representative is the lexicographically
/// smallest sorted (effect_index, weight) list over the orbit.
struct MeasurementClass {
    Measurement representative;
    std::size_t orbit_size = 0;
    std::size_t outcomes = 0;
};

std::vector<MeasurementClass> dedup_measurements(const std::vector<Measurement>& measurements,
                                                 const std::vector<BipartiteChannel>& group);

namespace detail {

/// All non-crossing perfect matchings of n points on a line (n even).
std::vector<std::vector<std::pair<int, int>>> non_crossing_matchings(int n_points);

/// Exact value of one planar chain circuit: states on wire pairs (2i, 2i+1),
/// the channel W^swap(A (x) B) inserted on the inner wire pairs selected by
/// `inserted`, effects on the matching's arcs. Used by the reversibility
/// battery; exposed for cross-validation against direct tensor contraction.
Rational planar_chain_value(const std::vector<RatMatrix>& states,
                            const std::vector<RatMatrix>& effects,
                            const std::vector<std::pair<int, int>>& matching,
                            const RatMatrix& a, const RatMatrix& b, bool swap,
                            const std::vector<bool>& inserted);

}  // namespace detail

}  // namespace hypersig
