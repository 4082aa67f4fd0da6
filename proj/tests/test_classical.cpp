#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypersig/analysis.hpp"
#include "hypersig/classical.hpp"
#include "hypersig/lp.hpp"

#include <random>

using namespace hypersig;

TEST_CASE("vertex counts") {
    CHECK(vertex_count(7, 7, 4) == Int(359863));
    CHECK(vertex_count(1, 5, 1) == Int(5));
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t n = 1; n <= 4; ++n) {
            Int full = 1;
            for (std::size_t t = 0; t < m; ++t) full *= static_cast<long>(n);
            CHECK(vertex_count(m, n, std::max(m, n) + 2) == full);
        }
    CHECK_THROWS_AS(vertex_count(0, 3, 2), std::invalid_argument);
}

TEST_CASE("vertex stream matches the closed-form count") {
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t d = 1; d <= 4; ++d) {
                Int count = 0;
                vertices_for_each(m, n, d, [&](const VertexDescriptor& v) {
                    CHECK(is_vertex(v.expand(n), d));
                    ++count;
                    return true;
                });
                CHECK(count == vertex_count(m, n, d));
            }
        }
    }
}

TEST_CASE("vertex stream has no duplicates and respects the order") {
    std::vector<VertexDescriptor> seen;
    vertices_for_each(3, 3, 2, [&](const VertexDescriptor& v) {
        for (const auto& u : seen) CHECK_FALSE(u == v);
        seen.push_back(v);
        return true;
    });
    // column sets appear in lexicographic order
    for (std::size_t i = 1; i < seen.size(); ++i)
        CHECK(seen[i - 1].column_set <= seen[i].column_set);
}

TEST_CASE("is_vertex") {
    CHECK_FALSE(is_vertex(CorrelationMatrix::from_matrix(RatMatrix::identity(7)), 4));
    CHECK(is_vertex(CorrelationMatrix::from_matrix(RatMatrix::identity(7)), 7));
    RatMatrix all0(3, 4);
    for (std::size_t x = 0; x < 3; ++x) all0.at(x, 0) = 1;
    CHECK(is_vertex(CorrelationMatrix::from_matrix(all0), 1));
    RatMatrix half(1, 2);
    half.at(0, 0) = Rational(1, 2);
    half.at(0, 1) = Rational(1, 2);
    CHECK_FALSE(is_vertex(CorrelationMatrix::from_matrix(half), 2));
}

TEST_CASE("payoff identities") {
    const GameMatrix g = reference_game();
    RatMatrix ones(7, 7);
    for (auto x = 0; x < 7; ++x)
        for (auto y = 0; y < 7; ++y) ones.at(x, y) = Rational(1, 7);
    const auto uniform = CorrelationMatrix::from_matrix(ones);
    // all-ones game divided by m pays 1 on any row-stochastic p
    RatMatrix allg(7, 7);
    for (auto x = 0; x < 7; ++x)
        for (auto y = 0; y < 7; ++y) allg.at(x, y) = Rational(1, 7);
    CHECK(payoff(GameMatrix{allg}, uniform) == Rational(1));
    CHECK_THROWS_AS(payoff(g, CorrelationMatrix::from_matrix(RatMatrix::identity(3))),
                    std::invalid_argument);
}

TEST_CASE("game_max closed form") {
    const GameMatrix g = reference_game();
    const auto [value, arg] = game_max(g, 4);
    CHECK(value == Rational(10, 21));
    CHECK(arg.column_set.size() <= 4);

    // d >= n: every row takes its maximum
    const auto [full, arg_full] = game_max(g, 7);
    Rational expect;
    for (std::size_t x = 0; x < 7; ++x) {
        Rational best = g.g.at(x, 0);
        for (std::size_t y = 1; y < 7; ++y)
            if (g.g.at(x, y) > best) best = g.g.at(x, y);
        expect += best;
    }
    CHECK(full == expect);

    // uniform game with one column allowed
    RatMatrix u(3, 5);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 5; ++y) u.at(x, y) = Rational(1, 15);
    CHECK(game_max(GameMatrix{u}, 1).first == Rational(1, 5));
}

TEST_CASE("game_max agrees with the full vertex scan on random games") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-6, 6);
    for (std::size_t m = 2; m <= 4; ++m) {
        for (std::size_t n = 2; n <= 4; ++n) {
            for (std::size_t d = 1; d <= 4; ++d) {
                for (int t = 0; t < 4; ++t) {
                    RatMatrix g(m, n);
                    for (std::size_t x = 0; x < m; ++x)
                        for (std::size_t y = 0; y < n; ++y)
                            g.at(x, y) = Rational(num(rng), 1 + (t % 5));
                    const GameMatrix game{g};
                    const auto closed = game_max(game, d).first;
                    Rational brute;
                    bool have = false;
                    vertices_for_each(m, n, d, [&](const VertexDescriptor& v) {
                        Rational val = payoff(game, v.expand(n));
                        if (!have || val > brute) {
                            brute = val;
                            have = true;
                        }
                        return true;
                    });
                    CHECK(closed == brute);
                }
            }
        }
    }
}

namespace {

CorrelationMatrix random_mixture(std::size_t m, std::size_t n, std::size_t d,
                                 std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(1, 9);
    std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(n - 1));
    RatMatrix acc(m, n);
    std::vector<Rational> w;
    Rational total;
    for (int v = 0; v < 6; ++v) {
        w.push_back(Rational(coef(rng)));
        total += w.back();
    }
    for (int v = 0; v < 6; ++v) {
        std::vector<std::uint32_t> cols(d);
        for (auto& c : cols) c = col(rng);
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        for (std::size_t x = 0; x < m; ++x) acc.at(x, cols[pick(rng)]) += w[v] / total;
    }
    return CorrelationMatrix::from_matrix(std::move(acc));
}

}  // namespace

TEST_CASE("membership agrees with brute-force LP over the full vertex list") {
    std::mt19937 rng(77);
    for (std::size_t m = 2; m <= 4; ++m) {
        for (std::size_t n = 2; n <= 4; ++n) {
            for (std::size_t d = 1; d <= 3; ++d) {
                for (int t = 0; t < 3; ++t) {
                    CorrelationMatrix p = random_mixture(m, n, std::min(d + 1, n), rng);
                    const auto cert = membership(p, d);
                    CHECK(verify_certificate(p, d, cert));

                    // brute force: enumerate all vertices, solve one big LP
                    std::vector<VertexDescriptor> verts;
                    vertices_for_each(m, n, d, [&](const VertexDescriptor& v) {
                        verts.push_back(v);
                        return true;
                    });
                    LpProblem lp;
                    lp.sense = LpSense::Minimize;
                    lp.objective.assign(verts.size(), Rational(0));
                    lp.constraints.ambient_dim = verts.size();
                    for (std::size_t x = 0; x < m; ++x) {
                        for (std::size_t y = 0; y < n; ++y) {
                            LinearConstraint eq;
                            eq.normal.assign(verts.size(), Rational(0));
                            for (std::size_t v = 0; v < verts.size(); ++v)
                                if (verts[v].assignment[x] == y) eq.normal[v] = 1;
                            eq.offset = p.p.at(x, y);
                            lp.constraints.equalities.push_back(std::move(eq));
                        }
                    }
                    LinearConstraint conv;
                    conv.normal.assign(verts.size(), Rational(1));
                    conv.offset = 1;
                    lp.constraints.equalities.push_back(std::move(conv));
                    for (std::size_t v = 0; v < verts.size(); ++v) {
                        LinearConstraint ge;
                        ge.normal.assign(verts.size(), Rational(0));
                        ge.normal[v] = 1;
                        ge.offset = 0;
                        lp.constraints.inequalities.push_back(std::move(ge));
                    }
                    const bool brute_inside = lp_solve(lp).status == LpStatus::Optimal;
                    const bool cg_inside =
                        cert.verdict == MembershipCertificate::Verdict::Inside;
                    CHECK(brute_inside == cg_inside);
                }
            }
        }
    }
}

TEST_CASE("membership on hand-picked points") {
    // the uniform 2x2 matrix lies in C(2,2,1)
    RatMatrix u(2, 2);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) u.at(x, y) = Rational(1, 2);
    const auto inside = membership(CorrelationMatrix::from_matrix(u), 1);
    CHECK(inside.verdict == MembershipCertificate::Verdict::Inside);
    CHECK(verify_certificate(CorrelationMatrix::from_matrix(u), 1, inside));

    // the identity does not lie in C(2,2,1)
    const auto id = CorrelationMatrix::from_matrix(RatMatrix::identity(2));
    const auto outside = membership(id, 1);
    CHECK(outside.verdict == MembershipCertificate::Verdict::Outside);
    CHECK(verify_certificate(id, 1, outside));
    CHECK(outside.witness_payoff > outside.classical_max);
}

TEST_CASE("every C(m,n,d) vertex passes is_vertex for d+1") {
    vertices_for_each(3, 4, 2, [&](const VertexDescriptor& v) {
        CHECK(is_vertex(v.expand(4), 3));
        return true;
    });
}
