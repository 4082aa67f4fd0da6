#pragma once

#include "hypersig/combinatorics.hpp"
#include "hypersig/gpt.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

namespace hypersig {

/// Vertex of C(m,n,d): a deterministic map row -> column using at most d
/// distinct columns.
struct VertexDescriptor {
    std::vector<std::uint32_t> assignment;  // length m, values in [0, n)
    std::vector<std::uint32_t> column_set;  // sorted distinct columns used

    CorrelationMatrix expand(std::size_t n) const;
    bool operator==(const VertexDescriptor& o) const { return assignment == o.assignment; }
};

/// Number of vertices of C(m,n,d): sum_{k=1}^{min(d,m,n)} k! C(n,k) S(m,k).
Int vertex_count(std::size_t m, std::size_t n, std::size_t d);

/// Streams every vertex exactly once, in (column_set, assignment) lexicographic
/// order. The callback returns false to stop early.
void vertices_for_each(std::size_t m, std::size_t n, std::size_t d,
                       const std::function<bool(const VertexDescriptor&)>& fn);

/// True iff p is a 0/1 matrix with at most d nonzero columns.
bool is_vertex(const CorrelationMatrix& p, std::size_t d);

struct GameMatrix {
    RatMatrix g;  // m x n payoff entries

    static GameMatrix from_matrix(RatMatrix g) { return GameMatrix{std::move(g)}; }
};

/// Hilbert-Schmidt payoff sum_{x,y} g_{x,y} p_{y|x}.
Rational payoff(const GameMatrix& g, const CorrelationMatrix& p);

/// Closed-form maximum of the payoff over C(m,n,d): best column subset of size
/// min(d,n) with per-row maxima. Ties resolve to the lexicographically
/// smallest column subset, then smallest assignment.
std::pair<Rational, VertexDescriptor> game_max(const GameMatrix& g, std::size_t d);

/// Exact membership certificate for p in C(m,n,d).
struct MembershipCertificate {
    enum class Verdict { Inside, Outside };
    Verdict verdict = Verdict::Inside;
    /// Inside: convex weights over vertices reproducing p exactly.
    std::vector<std::pair<VertexDescriptor, Rational>> weights;
    /// Outside: separating game with payoff(g,p) > classical_max exactly.
    GameMatrix witness;
    Rational witness_payoff;
    Rational classical_max;
};

/// Column-generation membership test: master LP over a working vertex set,
/// pricing by game_max on the dual matrix. Terminates with an exact inside or
/// outside certificate.
MembershipCertificate membership(const CorrelationMatrix& p, std::size_t d);

/// Independent re-verification of a certificate against p (exact arithmetic;
/// no shared state with membership()).
bool verify_certificate(const CorrelationMatrix& p, std::size_t d,
                        const MembershipCertificate& cert);

}  // namespace hypersig
