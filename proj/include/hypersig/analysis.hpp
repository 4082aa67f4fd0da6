#pragma once

#include "hypersig/classical.hpp"
#include "hypersig/toy_models.hpp"

#include <optional>

namespace hypersig {

/// The 7x7 correlation realized in the HS model by seven factorized states
/// and a seven-outcome measurement whose last effect is entangled.
struct XiRealization {
    std::vector<int> state_indices;  // into the 24 bipartite states
    Measurement measurement;         // into the 24 bipartite effects
    CorrelationMatrix xi;
};

/// Builds the realization and checks it against the hard-coded target matrix
/// entry by entry. Throws ConstructionError on any mismatch.
XiRealization build_xi(const BipartiteSystem& sys);

/// The hard-coded 7x7 witness game used alongside the membership certificate.
GameMatrix reference_game();

struct HypersignalingReport {
    CorrelationMatrix correlation;
    std::string realizing_model;
    std::vector<int> state_indices;
    Measurement measurement;
    std::size_t classical_dim = 0;
    MembershipCertificate witness;
    bool confirmed = false;
    /// Payoffs of the fixed reference game when shapes match.
    std::optional<Rational> reference_payoff;
    std::optional<Rational> reference_classical_max;
};

/// Re-derives the correlation from its declared realization, then decides
/// membership in C(m,n,K) and attaches certificates.
HypersignalingReport verify_hypersignaling(const BipartiteSystem& sys,
                                           const std::string& model_name,
                                           const std::vector<int>& state_indices,
                                           const Measurement& meas, std::size_t K);

struct SignalingDimensionProof {
    std::size_t dimension = 0;
    /// Lower bound: a 2x2 identity correlation realized by two antipodal
    /// states, outside C(2,2,1).
    CorrelationMatrix lower_bound_correlation;
    MembershipCertificate lower_bound_witness;
    /// Upper bound: every extremal measurement of the elementary system has
    /// exactly this many outcomes.
    std::vector<Measurement> extremal_measurements;
    std::size_t max_outcomes = 0;
};

/// kappa = 2 for the elementary square system, with both proof artifacts.
SignalingDimensionProof elementary_signaling_dimension();

struct CapacityResult {
    double capacity_bits = 0.0;
    std::size_t iterations = 0;
    double tolerance = 0.0;
    bool converged = false;
};

/// Blahut-Arimoto capacity of the channel p(y|x), uniform initial prior.
/// Columns that are identically zero are dropped before iterating.
CapacityResult capacity_blahut_arimoto(const CorrelationMatrix& p, double tol = 1e-9,
                                       std::size_t max_iter = 100000);

}  // namespace hypersig
