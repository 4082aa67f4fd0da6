#include "hypersig/classical.hpp"

#include "hypersig/lp.hpp"

#include <algorithm>
#include <map>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace hypersig {

CorrelationMatrix VertexDescriptor::expand(std::size_t n) const {
    RatMatrix p(assignment.size(), n);
    for (std::size_t x = 0; x < assignment.size(); ++x) p.at(x, assignment[x]) = 1;
    return CorrelationMatrix::from_matrix(std::move(p));
}

Int vertex_count(std::size_t m, std::size_t n, std::size_t d) {
    if (m == 0 || n == 0 || d == 0)
        throw std::invalid_argument("vertex_count: m, n, d must be positive");
    Int total = 0;
    const std::size_t kmax = std::min({d, m, n});
    for (std::size_t k = 1; k <= kmax; ++k)
        total += factorial(k) * binomial(n, k) * stirling2(m, k);
    return total;
}

namespace {

// next k-subset of [0, n) in lexicographic order; false when exhausted
bool next_subset(std::vector<std::uint32_t>& s, std::size_t n) {
    const std::size_t k = s.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (s[i] + 1 <= n - k + i) {
            ++s[i];
            for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

void vertices_for_each(std::size_t m, std::size_t n, std::size_t d,
                       const std::function<bool(const VertexDescriptor&)>& fn) {
    if (m == 0 || n == 0 || d == 0)
        throw std::invalid_argument("vertices_for_each: m, n, d must be positive");
    const std::size_t kmax = std::min({d, m, n});

    std::vector<std::uint32_t> cols;
    // emits the onto assignments of the current column subset, then descends:
    // preorder over growing subsets = column-set lexicographic order
    std::function<bool()> walk = [&]() -> bool {
        const std::size_t k = cols.size();
        if (k >= 1) {
            std::vector<std::uint32_t> idx(m, 0);
            for (;;) {
                std::vector<bool> used(k, false);
                for (auto i : idx) used[i] = true;
                if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) {
                    VertexDescriptor v;
                    v.assignment.resize(m);
                    for (std::size_t x = 0; x < m; ++x) v.assignment[x] = cols[idx[x]];
                    v.column_set = cols;
                    if (!fn(v)) return false;
                }
                std::size_t pos = m;
                bool advanced = false;
                while (pos-- > 0) {
                    if (idx[pos] + 1 < k) {
                        ++idx[pos];
                        std::fill(idx.begin() + pos + 1, idx.end(), 0);
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) break;
            }
        }
        if (k == kmax) return true;
        const std::uint32_t start = cols.empty() ? 0 : cols.back() + 1;
        for (std::uint32_t c = start; c < n; ++c) {
            cols.push_back(c);
            const bool keep_going = walk();
            cols.pop_back();
            if (!keep_going) return false;
        }
        return true;
    };
    walk();
}

bool is_vertex(const CorrelationMatrix& p, std::size_t d) {
    std::vector<bool> used(p.n, false);
    for (std::size_t x = 0; x < p.m; ++x) {
        for (std::size_t y = 0; y < p.n; ++y) {
            const Rational& v = p.p.at(x, y);
            if (!v.is_zero() && v != Rational(1)) return false;
            if (!v.is_zero()) used[y] = true;
        }
    }
    const std::size_t cols = std::count(used.begin(), used.end(), true);
    return cols <= d;
}

Rational payoff(const GameMatrix& g, const CorrelationMatrix& p) {
    if (g.g.rows() != p.m || g.g.cols() != p.n)
        throw std::invalid_argument("payoff: shape mismatch");
    return hs_dot(g.g, p.p);
}

std::pair<Rational, VertexDescriptor> game_max(const GameMatrix& g, std::size_t d) {
    const std::size_t m = g.g.rows(), n = g.g.cols();
    const std::size_t k = std::min(d, n);
    std::vector<std::uint32_t> cols(k);
    std::iota(cols.begin(), cols.end(), 0);

    bool have = false;
    Rational best;
    VertexDescriptor arg;
    do {
        Rational total;
        std::vector<std::uint32_t> assign(m);
        for (std::size_t x = 0; x < m; ++x) {
            std::uint32_t by = cols[0];
            Rational bv = g.g.at(x, cols[0]);
            for (std::size_t j = 1; j < k; ++j) {
                const Rational& v = g.g.at(x, cols[j]);
                if (v > bv) {
                    bv = v;
                    by = cols[j];
                }
            }
            total += bv;
            assign[x] = by;
        }
        if (!have || total > best) {
            have = true;
            best = total;
            arg.assignment = std::move(assign);
            arg.column_set = cols;
        }
    } while (next_subset(cols, n));

    // shrink the column set to the columns actually used
    std::vector<std::uint32_t> used(arg.assignment.begin(), arg.assignment.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    arg.column_set = std::move(used);
    return {best, arg};
}

namespace {

// deterministic initial vertices: greedy peeling of the residual mass. Each
// round restricts to the d heaviest residual columns, assigns every row its
// heaviest cell there, and subtracts the largest feasible multiple of that
// vertex. Whatever the peeling cannot explain is left to column generation.
std::vector<VertexDescriptor> initial_vertices(const CorrelationMatrix& p, std::size_t d) {
    const std::size_t m = p.m, n = p.n;
    std::vector<VertexDescriptor> out;
    std::map<std::vector<std::uint32_t>, bool> seen;
    RatMatrix residual = p.p;

    for (std::size_t round = 0; round < 2 * m * n + 2; ++round) {
        std::vector<std::pair<Rational, std::uint32_t>> mass;
        for (std::size_t y = 0; y < n; ++y) {
            Rational s;
            for (std::size_t x = 0; x < m; ++x) s += residual.at(x, y);
            mass.emplace_back(-s, static_cast<std::uint32_t>(y));
        }
        std::sort(mass.begin(), mass.end());
        std::vector<std::uint32_t> chosen;
        for (std::size_t i = 0; i < std::min(d, n); ++i) chosen.push_back(mass[i].second);
        std::sort(chosen.begin(), chosen.end());

        VertexDescriptor v;
        v.assignment.resize(m);
        Rational step;
        bool first_row = true;
        for (std::size_t x = 0; x < m; ++x) {
            std::uint32_t by = chosen[0];
            for (auto y : chosen)
                if (residual.at(x, y) > residual.at(x, by)) by = y;
            v.assignment[x] = by;
            if (first_row || residual.at(x, by) < step) step = residual.at(x, by);
            first_row = false;
        }
        if (!seen.count(v.assignment)) {
            seen[v.assignment] = true;
            out.push_back(v);
        }
        if (step.sign() <= 0) break;
        for (std::size_t x = 0; x < m; ++x) residual.at(x, v.assignment[x]) -= step;
        bool clean = true;
        for (const auto& e : residual.entries())
            if (!e.is_zero()) clean = false;
        if (clean) break;
    }
    return out;
}

}  // namespace

MembershipCertificate membership(const CorrelationMatrix& p, std::size_t d) {
    const std::size_t m = p.m, n = p.n;
    if (m == 0) throw std::invalid_argument("membership: empty correlation");
    // one equation per probability entry, minus the per-row redundancy implied
    // by row-stochasticity together with the convexity row
    const std::size_t cols_kept = n - 1;
    const std::size_t rows = m * cols_kept;

    std::vector<VertexDescriptor> verts = initial_vertices(p, d);
    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    for (std::size_t i = 0; i < verts.size(); ++i) seen[verts[i].assignment] = i;
    int prunes_left = 20;  // bounded so the working set eventually only grows

    for (;;) {
        // master: min sum(s+ + s-)  s.t.  sum_v lambda_v vert_v + s+ - s- = p,
        //                                 sum_v lambda_v = 1, all vars >= 0
        const std::size_t nv = verts.size();
        const std::size_t nvar = nv + 2 * rows;
        LpProblem master;
        master.sense = LpSense::Minimize;
        master.objective.assign(nvar, Rational(0));
        for (std::size_t i = 0; i < 2 * rows; ++i) master.objective[nv + i] = 1;
        master.constraints.ambient_dim = nvar;
        master.nonneg.assign(nvar, true);
        for (std::size_t r = 0; r < rows; ++r) {
            LinearConstraint eq;
            eq.normal.assign(nvar, Rational(0));
            const std::size_t x = r / cols_kept, y = r % cols_kept;
            for (std::size_t v = 0; v < nv; ++v)
                if (verts[v].assignment[x] == y) eq.normal[v] = 1;
            eq.normal[nv + r] = 1;
            eq.normal[nv + rows + r] = -1;
            eq.offset = p.p.at(x, y);
            master.constraints.equalities.push_back(std::move(eq));
        }
        {
            LinearConstraint conv;
            conv.normal.assign(nvar, Rational(0));
            for (std::size_t v = 0; v < nv; ++v) conv.normal[v] = 1;
            conv.offset = 1;
            master.constraints.equalities.push_back(std::move(conv));
        }

        const LpResult r = lp_solve(master);
        if (r.status != LpStatus::Optimal)
            throw std::logic_error("membership: master LP must be feasible and bounded");
        if (std::getenv("HYPERSIG_CG_DEBUG"))
            std::fprintf(stderr, "master nv=%zu pivots=%zu value=%s\n", nv, r.pivots,
                         r.value.str().c_str());

        if (r.value.is_zero()) {
            MembershipCertificate cert;
            cert.verdict = MembershipCertificate::Verdict::Inside;
            for (std::size_t v = 0; v < nv; ++v)
                if (r.primal[v].sign() > 0) cert.weights.emplace_back(verts[v], r.primal[v]);
            return cert;
        }

        // drop columns that carry no weight; they can always be re-priced in
        if (nv > 48 && prunes_left > 0) {
            --prunes_left;
            std::vector<VertexDescriptor> kept;
            for (std::size_t v = 0; v < nv; ++v)
                if (r.primal[v].sign() > 0) kept.push_back(verts[v]);
            if (kept.size() < verts.size()) {
                verts = std::move(kept);
                seen.clear();
                for (std::size_t i = 0; i < verts.size(); ++i) seen[verts[i].assignment] = i;
            }
        }

        // pricing: duals y (one per kept entry, zero on the dropped column)
        // and mu (convexity row); an improving vertex has y^T v + mu > 0
        RatMatrix y(m, n);
        for (std::size_t rr = 0; rr < rows; ++rr)
            y.at(rr / cols_kept, rr % cols_kept) = r.eq_duals[rr];
        const Rational mu = r.eq_duals[rows];
        const GameMatrix pricing{y};
        auto [maxval, argmax] = game_max(pricing, d);
        if (maxval + mu <= Rational(0)) {
            // no improving vertex anywhere in C(m,n,d): y separates p
            MembershipCertificate cert;
            cert.verdict = MembershipCertificate::Verdict::Outside;
            cert.witness = pricing;
            cert.witness_payoff = payoff(cert.witness, p);
            cert.classical_max = maxval;
            return cert;
        }
        if (seen.count(argmax.assignment))
            throw std::logic_error("membership: pricing returned a known vertex");
        seen[argmax.assignment] = verts.size();
        verts.push_back(std::move(argmax));

        // secondary columns: greedy vertices of other improving column subsets
        // cut the number of master solves without affecting correctness
        std::vector<std::pair<Rational, VertexDescriptor>> extras;
        const std::size_t kk = std::min(d, n);
        std::vector<std::uint32_t> cs(kk);
        std::iota(cs.begin(), cs.end(), 0);
        do {
            Rational total;
            VertexDescriptor v;
            v.assignment.resize(m);
            for (std::size_t x = 0; x < m; ++x) {
                std::uint32_t by = cs[0];
                Rational bv = y.at(x, cs[0]);
                for (std::size_t j = 1; j < kk; ++j)
                    if (y.at(x, cs[j]) > bv) { bv = y.at(x, cs[j]); by = cs[j]; }
                total += bv;
                v.assignment[x] = by;
            }
            if (total + mu > Rational(0) && !seen.count(v.assignment))
                extras.emplace_back(total, std::move(v));
        } while (next_subset(cs, n));
        std::sort(extras.begin(), extras.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t e = 0; e < extras.size() && e < 8; ++e) {
            if (seen.count(extras[e].second.assignment)) continue;
            seen[extras[e].second.assignment] = verts.size();
            verts.push_back(extras[e].second);
        }
    }
}

bool verify_certificate(const CorrelationMatrix& p, std::size_t d,
                        const MembershipCertificate& cert) {
    if (cert.verdict == MembershipCertificate::Verdict::Inside) {
        RatMatrix acc(p.m, p.n);
        Rational total;
        for (const auto& [v, w] : cert.weights) {
            if (w.sign() <= 0) return false;
            if (!is_vertex(v.expand(p.n), d)) return false;
            total += w;
            for (std::size_t x = 0; x < p.m; ++x) acc.at(x, v.assignment[x]) += w;
        }
        return total == Rational(1) && acc == p.p;
    }
    // outside: strict payoff gap, classical max recomputed independently
    const Rational achieved = payoff(cert.witness, p);
    Rational best;
    bool have = false;
    vertices_for_each(p.m, p.n, d, [&](const VertexDescriptor& v) {
        Rational val;
        for (std::size_t x = 0; x < p.m; ++x) val += cert.witness.g.at(x, v.assignment[x]);
        if (!have || val > best) {
            have = true;
            best = val;
        }
        return true;
    });
    return have && achieved > best && best == cert.classical_max;
}

}  // namespace hypersig
