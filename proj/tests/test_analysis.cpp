#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypersig/analysis.hpp"

#include <cmath>

using namespace hypersig;

namespace {
const BipartiteSystem& sys() {
    static BipartiteSystem s = build_bipartite();
    return s;
}
}  // namespace

TEST_CASE("xi is reproduced entry by entry") {
    const XiRealization xi = build_xi(sys());
    CHECK(xi.xi.m == 7);
    CHECK(xi.xi.n == 7);
    CHECK(xi.xi.p.at(0, 0) == Rational(1, 2));
    CHECK(xi.xi.p.at(0, 5) == Rational(1, 2));
    CHECK(xi.xi.p.at(6, 4) == Rational(1, 2));
    for (std::size_t x = 0; x < 7; ++x) {
        Rational row;
        for (std::size_t y = 0; y < 7; ++y) row += xi.xi.p.at(x, y);
        CHECK(row == Rational(1));
    }
    // the measurement really sums to the unit effect
    RatMatrix acc(3, 3);
    for (const auto& e : xi.measurement.entries)
        acc = acc + e.weight * sys().effects[e.effect_index];
    CHECK(acc == sys().unit_effect);
}

TEST_CASE("payoff and classical maximum of the reference game") {
    const XiRealization xi = build_xi(sys());
    const GameMatrix g = reference_game();
    CHECK(payoff(g, xi.xi) == Rational(1, 2));
    CHECK(game_max(g, 4).first == Rational(10, 21));
    CHECK(payoff(g, xi.xi) - game_max(g, 4).first == Rational(1, 42));
}

TEST_CASE("hypersignaling verification certifies xi against K=4 and not K=7") {
    const XiRealization xi = build_xi(sys());
    const auto rep4 = verify_hypersignaling(sys(), "HS", xi.state_indices, xi.measurement, 4);
    CHECK(rep4.confirmed);
    REQUIRE(rep4.reference_payoff.has_value());
    CHECK(*rep4.reference_payoff == Rational(1, 2));
    CHECK(*rep4.reference_classical_max == Rational(10, 21));
    CHECK(rep4.witness.witness_payoff > rep4.witness.classical_max);

    const auto rep7 = verify_hypersignaling(sys(), "HS", xi.state_indices, xi.measurement, 7);
    CHECK_FALSE(rep7.confirmed);
    CHECK(rep7.witness.verdict == MembershipCertificate::Verdict::Inside);
}

TEST_CASE("the squit correlation is not hypersignaling") {
    // identity 2x2 from the antipodal pair lies in C(2,2,2)
    const SystemSpec sq = build_elementary();
    const auto id = CorrelationMatrix::from_matrix(RatMatrix::identity(2));
    const auto cert = membership(id, 2);
    CHECK(cert.verdict == MembershipCertificate::Verdict::Inside);
    (void)sq;
}

TEST_CASE("elementary signaling dimension is two with both artifacts") {
    const auto proof = elementary_signaling_dimension();
    CHECK(proof.dimension == 2);
    CHECK(proof.lower_bound_correlation.p == RatMatrix::identity(2));
    CHECK(proof.lower_bound_witness.verdict == MembershipCertificate::Verdict::Outside);
    CHECK(verify_certificate(proof.lower_bound_correlation, 1, proof.lower_bound_witness));
    REQUIRE(proof.extremal_measurements.size() == 2);
    for (const auto& m : proof.extremal_measurements) CHECK(m.outcomes() == 2);
    CHECK(proof.max_outcomes == 2);
}

TEST_CASE("capacity of the hypersignaling correlation") {
    const XiRealization xi = build_xi(sys());
    const auto cap = capacity_blahut_arimoto(xi.xi, 1e-9, 100000);
    CHECK(cap.converged);
    CHECK(cap.capacity_bits < 1.78);
    CHECK(cap.capacity_bits < 2.0);
    // regression constant from an independent high-precision optimization
    CHECK(std::abs(cap.capacity_bits - 1.771553303163612) < 1e-6);
}

TEST_CASE("capacity sanity channels") {
    const auto id = CorrelationMatrix::from_matrix(RatMatrix::identity(2));
    const auto c1 = capacity_blahut_arimoto(id, 1e-12, 10000);
    CHECK(c1.converged);
    CHECK(std::abs(c1.capacity_bits - 1.0) < 1e-6);

    RatMatrix flat(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) flat.at(i, j) = Rational(1, 2);
    const auto c0 = capacity_blahut_arimoto(CorrelationMatrix::from_matrix(flat), 1e-12, 10000);
    CHECK(c0.converged);
    CHECK(std::abs(c0.capacity_bits) < 1e-6);

    // a channel with an all-zero output column: the column is dropped
    RatMatrix z(2, 3);
    z.at(0, 0) = 1;
    z.at(1, 1) = 1;
    const auto cz = capacity_blahut_arimoto(CorrelationMatrix::from_matrix(z), 1e-12, 10000);
    CHECK(std::abs(cz.capacity_bits - 1.0) < 1e-6);

    CHECK_THROWS_AS(capacity_blahut_arimoto(id, 0.0, 10), std::invalid_argument);
}

TEST_CASE("blahut-arimoto iterates are non-decreasing") {
    // run with a coarse tolerance and track successive lower bounds
    const XiRealization xi = build_xi(sys());
    double prev = -1.0;
    for (std::size_t iters : {1ul, 2ul, 5ul, 10ul, 50ul, 200ul}) {
        const auto cap = capacity_blahut_arimoto(xi.xi, 1e-15, iters);
        CHECK(cap.capacity_bits >= prev - 1e-12);
        prev = cap.capacity_bits;
    }
}

TEST_CASE("capacity is monotone under output coarse-graining") {
    const XiRealization xi = build_xi(sys());
    const double full = capacity_blahut_arimoto(xi.xi, 1e-9, 100000).capacity_bits;
    for (std::size_t a = 0; a < 7; ++a) {
        for (std::size_t b = a + 1; b < 7; ++b) {
            RatMatrix merged(7, 6);
            for (std::size_t x = 0; x < 7; ++x) {
                std::size_t out = 0;
                for (std::size_t y = 0; y < 7; ++y) {
                    if (y == b) continue;
                    merged.at(x, out) = y == a ? xi.xi.p.at(x, a) + xi.xi.p.at(x, b)
                                               : xi.xi.p.at(x, y);
                    ++out;
                }
            }
            const auto cap =
                capacity_blahut_arimoto(CorrelationMatrix::from_matrix(merged), 1e-9, 100000);
            CHECK(cap.capacity_bits <= full + 2e-9);
        }
    }
}

TEST_CASE("planar chain evaluator matches direct tensor contraction") {
    // brute-force contraction of a two-state circuit against the cycle walker
    const auto& s = sys();
    const auto group = bipartite_group(s);
    const auto matchings = detail::non_crossing_matchings(4);
    CHECK(matchings.size() == 2);
    CHECK(detail::non_crossing_matchings(6).size() == 5);
    CHECK(detail::non_crossing_matchings(8).size() == 14);

    for (std::size_t ci : {3ul, 40ul, 77ul, 100ul}) {
        const auto& ch = group[ci];
        for (int x : {0, 16, 21}) {
            for (int y : {5, 17, 23}) {
                for (const auto& mt : matchings) {
                    const Rational got = detail::planar_chain_value(
                        {s.states[x], s.states[21]}, {s.effects[y], s.effects[18]}, mt,
                        ch.action.left, ch.action.right, ch.swap, {true});
                    // direct 4-wire contraction
                    Rational want;
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c)
                                for (int d = 0; d < 3; ++d)
                                    for (int pp = 0; pp < 3; ++pp)
                                        for (int q = 0; q < 3; ++q) {
                                            // V[p,q,b,c]
                                            Rational v =
                                                ch.swap ? ch.action.right.at(pp, c) *
                                                              ch.action.left.at(q, b)
                                                        : ch.action.left.at(pp, b) *
                                                              ch.action.right.at(q, c);
                                            if (v.is_zero()) continue;
                                            const int w[4] = {a, pp, q, d};
                                            want += v * s.states[x].at(a, b) *
                                                    s.states[21].at(c, d) *
                                                    s.effects[y].at(w[mt[0].first],
                                                                    w[mt[0].second]) *
                                                    s.effects[18].at(w[mt[1].first],
                                                                     w[mt[1].second]);
                                        }
                    CHECK(got == want);
                }
            }
        }
    }
}
