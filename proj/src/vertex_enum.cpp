#include "hypersig/vertex_enum.hpp"

#include "hypersig/linalg.hpp"

#include <algorithm>
#include <cstdint>

namespace hypersig {

namespace {

// variable-width bitset over processed constraints
struct Bits {
    std::vector<std::uint64_t> w;
    void resize_bits(std::size_t n) { w.assign((n + 63) / 64, 0); }
    void set(std::size_t i) { w[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    friend Bits operator&(const Bits& a, const Bits& b) {
        Bits r;
        r.w.resize(a.w.size());
        for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
    bool subset_of(const Bits& other) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~other.w[i]) return false;
        return true;
    }
};

struct Ray {
    RatVector v;
    Bits zero;  // processed constraints tight on this ray
};

// positive scaling to a primitive integer vector
void make_primitive(RatVector& v) {
    Int lcm_den = 1;
    for (const auto& x : v) {
        Int d = x.denominator();
        lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    Int g = 0;
    std::vector<Int> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = v[i].numerator() * (lcm_den / v[i].denominator());
        g = gcd(g, ints[i]);
    }
    if (sgn(g) == 0) return;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g, 1);
}

// Solve the equality system C x = d. Returns false when inconsistent;
// otherwise fills a particular solution and a nullspace basis.
bool solve_affine(const std::vector<LinearConstraint>& eqs, std::size_t n, RatVector& x0,
                  std::vector<RatVector>& nullspace) {
    std::vector<RatVector> m;
    for (const auto& e : eqs) {
        RatVector row = e.normal;
        row.push_back(e.offset);
        m.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        const Rational inv = Rational(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m.size(); ++i)
        if (!m[i][n].is_zero()) return false;

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    x0.assign(n, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x0[pivot_col[i]] = m[i][n];

    nullspace.clear();
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        RatVector dir(n, Rational(0));
        dir[c] = 1;
        for (std::size_t i = 0; i < r; ++i) dir[pivot_col[i]] = -m[i][c];
        nullspace.push_back(std::move(dir));
    }
    return true;
}

}  // namespace

std::vector<RatVector> enumerate_vertices(const HPolytope& h) {
    h.validate();
    const std::size_t n = h.ambient_dim;

    RatVector x0;
    std::vector<RatVector> basis;  // nullspace of the equalities
    if (!solve_affine(h.equalities, n, x0, basis)) return {};
    const std::size_t k = basis.size();

    // reduced inequalities  <a', u> >= b'  over the affine chart x = x0 + B u
    std::vector<RatVector> A;
    RatVector b;
    for (const auto& c : h.inequalities) {
        RatVector ap(k);
        bool zero = true;
        for (std::size_t j = 0; j < k; ++j) {
            Rational s;
            for (std::size_t i = 0; i < n; ++i) s += c.normal[i] * basis[j][i];
            ap[j] = s;
            if (!s.is_zero()) zero = false;
        }
        Rational dot0;
        for (std::size_t i = 0; i < n; ++i) dot0 += c.normal[i] * x0[i];
        Rational bp = c.offset - dot0;
        if (zero) {
            if (bp.sign() > 0) return {};  // constant constraint violated on the chart
            continue;
        }
        A.push_back(std::move(ap));
        b.push_back(std::move(bp));
    }

    if (k == 0) return {x0};  // equalities pin a single point, already checked

    // feasibility pre-check so that lineality can be reported as unboundedness
    {
        LpProblem feas;
        feas.objective.assign(k, Rational(0));
        feas.constraints.ambient_dim = k;
        for (std::size_t i = 0; i < A.size(); ++i)
            feas.constraints.inequalities.push_back({A[i], b[i]});
        feas.sense = LpSense::Minimize;
        if (lp_solve(feas).status == LpStatus::Infeasible) return {};
    }

    // homogenize: rays (u, t) with [a' | -b'] (u,t) >= 0 and t >= 0
    std::vector<RatVector> cons;
    for (std::size_t i = 0; i < A.size(); ++i) {
        RatVector row = A[i];
        row.push_back(-b[i]);
        cons.push_back(std::move(row));
    }
    {
        RatVector trow(k + 1, Rational(0));
        trow[k] = 1;
        cons.push_back(std::move(trow));
    }
    std::sort(cons.begin(), cons.end());
    cons.erase(std::unique(cons.begin(), cons.end()), cons.end());
    const std::size_t dim = k + 1;

    auto map_back = [&](const RatVector& u_dir) {
        RatVector dir(n, Rational(0));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) dir[i] += u_dir[j] * basis[j][i];
        return dir;
    };

    // initial simplicial cone from the first lexicographic full-rank subset
    EchelonBasis eb(dim);
    std::vector<std::size_t> init;
    for (std::size_t i = 0; i < cons.size() && eb.size() < dim; ++i) {
        if (eb.push(cons[i])) init.push_back(i);
    }
    if (init.size() < dim) {
        // lineality: a direction orthogonal to every constraint; the polytope
        // is feasible, hence contains a line
        RatMatrix m(cons.size(), dim);
        for (std::size_t i = 0; i < cons.size(); ++i)
            for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = cons[i][j];
        // any nullspace vector of m
        RatVector zero_rhs(cons.size(), Rational(0));
        std::vector<RatVector> ns;
        RatVector part;
        std::vector<LinearConstraint> eqs;
        for (std::size_t i = 0; i < cons.size(); ++i) eqs.push_back({cons[i], Rational(0)});
        solve_affine(eqs, dim, part, ns);
        RatVector u_dir = ns.front();
        u_dir.resize(k);  // t-component is zero: the t>=0 row is among the constraints
        throw UnboundedPolytope(map_back(u_dir));
    }

    // invert the initial system: rays = columns of M^{-1}
    RatMatrix M(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) M.at(i, j) = cons[init[i]][j];
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        RatVector ej(dim, Rational(0));
        ej[j] = 1;
        auto col = solve_unique(M, ej);
        Ray r;
        r.v = *col;
        make_primitive(r.v);
        r.zero.resize_bits(cons.size());
        for (std::size_t i = 0; i < dim; ++i)
            if (i != j) r.zero.set(init[i]);
        rays.push_back(std::move(r));
    }

    std::vector<bool> processed(cons.size(), false);
    for (auto i : init) processed[i] = true;

    auto dot = [&](const RatVector& a, const RatVector& v) {
        Rational s;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * v[i];
        return s;
    };

    for (std::size_t ci = 0; ci < cons.size(); ++ci) {
        if (processed[ci]) continue;
        std::vector<int> side(rays.size());
        std::vector<Rational> val(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(cons[ci], rays[r].v);
            side[r] = val[r].sign();
        }
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (side[r] >= 0) {
                Ray keep = rays[r];
                if (side[r] == 0) keep.zero.set(ci);
                next.push_back(std::move(keep));
            }
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (side[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (side[q] >= 0) continue;
                // adjacency: no third ray's zero set contains zero(p) & zero(q)
                Bits common = rays[p].zero & rays[q].zero;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size(); ++r) {
                    if (r == p || r == q) continue;
                    if (common.subset_of(rays[r].zero)) { adjacent = false; break; }
                }
                if (!adjacent) continue;
                Ray nr;
                nr.v.resize(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    nr.v[i] = val[p] * rays[q].v[i] - val[q] * rays[p].v[i];
                make_primitive(nr.v);
                nr.zero = common;
                nr.zero.set(ci);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
        processed[ci] = true;
        if (rays.empty()) return {};
    }

    // split rays by t-component
    std::vector<RatVector> vertices;
    for (const auto& r : rays) {
        const Rational& t = r.v[k];
        if (t.is_zero()) {
            RatVector u_dir(r.v.begin(), r.v.begin() + k);
            throw UnboundedPolytope(map_back(u_dir));
        }
        RatVector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational acc = x0[i];
            for (std::size_t j = 0; j < k; ++j) acc += (r.v[j] / t) * basis[j][i];
            x[i] = acc;
        }
        vertices.push_back(std::move(x));
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

}  // namespace hypersig
