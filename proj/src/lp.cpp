#include "hypersig/lp.hpp"

#include <algorithm>
#include <limits>

namespace hypersig {

void HPolytope::validate() const {
    for (const auto& c : inequalities)
        if (c.normal.size() != ambient_dim)
            throw std::invalid_argument("HPolytope: inequality normal has wrong length");
    for (const auto& c : equalities)
        if (c.normal.size() != ambient_dim)
            throw std::invalid_argument("HPolytope: equality normal has wrong length");
}

namespace {

// Standard-form tableau: min c^T z  s.t.  A z = b, z >= 0, b >= 0.
// Columns: [0, 2n)        split free variables x = u - w
//          [2n, 2n+mi)    slacks for inequalities (coefficient -1 before row flip)
//          [2n+mi, +m)    artificials (identity at start)
class Simplex {
public:
    Simplex(std::vector<RatVector> rows, RatVector rhs, std::size_t n_struct)
        : m_(rows.size()), n_struct_(n_struct), a_(std::move(rows)), b_(std::move(rhs)) {
        n_total_ = n_struct_ + m_;  // + artificials
        for (auto& row : a_) row.resize(n_total_);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            a_[i][n_struct_ + i] = 1;
            basis_[i] = n_struct_ + i;
        }
    }

    // Phase 1: drive artificials out. Returns phase-1 optimum (0 iff feasible).
    Rational phase1() {
        RatVector cost(n_total_);
        for (std::size_t j = n_struct_; j < n_total_; ++j) cost[j] = 1;
        set_costs(cost);
        run(/*artificials_allowed=*/true);
        return obj_;
    }

    // After a feasible phase 1: pivot basic artificials out where possible.
    void purge_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_struct_) continue;
            std::size_t enter = n_total_;
            for (std::size_t j = 0; j < n_struct_; ++j) {
                if (!a_[i][j].is_zero()) { enter = j; break; }
            }
            if (enter < n_total_) pivot(i, enter);
            // else: redundant row; artificial stays basic at level 0, never re-enters
        }
    }

    // Phase 2 with the real costs. Returns true when optimal, false when unbounded.
    bool phase2(const RatVector& struct_costs) {
        RatVector cost(n_total_);
        for (std::size_t j = 0; j < n_struct_; ++j) cost[j] = struct_costs[j];
        set_costs(cost);
        return run(/*artificials_allowed=*/false);
    }

    Rational objective() const { return obj_; }

    RatVector solution() const {
        RatVector z(n_total_);
        for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = b_[i];
        return z;
    }

    // Duals of the rows read off the artificial columns: the reduced cost of
    // artificial i is c_i - y_i, so y_i = c_i - reduced_i.
    RatVector duals() const {
        RatVector y(m_);
        for (std::size_t i = 0; i < m_; ++i)
            y[i] = cost_[n_struct_ + i] - reduced_[n_struct_ + i];
        return y;
    }

    // Improving ray along nonbasic column `enter` (set after unbounded run).
    RatVector ray() const {
        RatVector dir(n_total_);
        dir[unbounded_col_] = 1;
        for (std::size_t i = 0; i < m_; ++i) dir[basis_[i]] = -a_[i][unbounded_col_];
        return dir;
    }

private:
    void set_costs(const RatVector& cost) {
        cost_ = cost;
        reduced_ = cost;
        obj_ = Rational(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational cb = cost_[basis_[i]];
            if (cb.is_zero()) continue;
            obj_ += cb * b_[i];
            for (std::size_t j = 0; j < n_total_; ++j) reduced_[j] -= cb * a_[i][j];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = Rational(1) / a_[row][col];
        for (auto& v : a_[row]) v *= inv;
        b_[row] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || a_[i][col].is_zero()) continue;
            const Rational f = a_[i][col];
            for (std::size_t j = 0; j < n_total_; ++j) a_[i][j] -= f * a_[row][j];
            b_[i] -= f * b_[row];
        }
        if (!reduced_[col].is_zero()) {
            const Rational f = reduced_[col];
            for (std::size_t j = 0; j < n_total_; ++j) reduced_[j] -= f * a_[row][j];
            obj_ += f * b_[row];
        }
        basis_[row] = col;
        ++pivot_count_;
    }

    // Dantzig pivoting with a Bland fallback once pivots stall degenerately;
    // exactness is unaffected and Bland guarantees termination.
    bool run(bool artificials_allowed) {
        const std::size_t limit = artificials_allowed ? n_total_ : n_struct_;
        std::size_t degenerate_streak = 0;
        constexpr std::size_t kStallWindow = 24;
        for (;;) {
            const bool bland = degenerate_streak >= kStallWindow;
            std::size_t enter = n_total_;
            if (bland) {
                for (std::size_t j = 0; j < limit; ++j) {
                    if (reduced_[j].sign() < 0) { enter = j; break; }
                }
            } else {
                for (std::size_t j = 0; j < limit; ++j) {
                    if (reduced_[j].sign() < 0 &&
                        (enter == n_total_ || reduced_[j] < reduced_[enter]))
                        enter = j;
                }
            }
            if (enter == n_total_) return true;

            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (a_[i][enter].sign() <= 0) continue;
                Rational ratio = b_[i] / a_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m_) {
                unbounded_col_ = enter;
                return false;
            }
            if (best.is_zero())
                ++degenerate_streak;
            else
                degenerate_streak = 0;
            pivot(leave, enter);
        }
    }

    std::size_t m_, n_struct_, n_total_ = 0;
    std::vector<RatVector> a_;
    RatVector b_;
    RatVector cost_, reduced_;
    Rational obj_;
    std::vector<std::size_t> basis_;
    std::size_t unbounded_col_ = 0;

public:
    std::size_t pivot_count_ = 0;
};

}  // namespace

LpResult lp_solve(const LpProblem& p) {
    p.constraints.validate();
    const std::size_t n = p.constraints.ambient_dim;
    if (p.objective.size() != n)
        throw std::invalid_argument("lp_solve: objective length does not match ambient dimension");
    if (!p.nonneg.empty() && p.nonneg.size() != n)
        throw std::invalid_argument("lp_solve: nonneg flag length does not match dimension");

    const auto& ineqs = p.constraints.inequalities;
    const auto& eqs = p.constraints.equalities;
    const std::size_t mi = ineqs.size(), me = eqs.size(), m = mi + me;

    // column layout: one column per sign-restricted variable, a (+,-) pair per
    // free variable, then one slack per inequality
    std::vector<std::size_t> col_of(n);
    std::vector<bool> split(n);
    std::size_t nc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        col_of[j] = nc;
        split[j] = p.nonneg.empty() || !p.nonneg[j];
        nc += split[j] ? 2 : 1;
    }
    const std::size_t n_struct = nc + mi;

    // rows: inequalities first (<a,x> - s = b), then equalities; flip rows to b >= 0
    std::vector<RatVector> rows(m, RatVector(n_struct));
    RatVector rhs(m);
    std::vector<int> row_sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        const LinearConstraint& c = i < mi ? ineqs[i] : eqs[i - mi];
        for (std::size_t j = 0; j < n; ++j) {
            rows[i][col_of[j]] = c.normal[j];
            if (split[j]) rows[i][col_of[j] + 1] = -c.normal[j];
        }
        if (i < mi) rows[i][nc + i] = -1;
        rhs[i] = c.offset;
        if (rhs[i].sign() < 0) {
            row_sign[i] = -1;
            for (auto& v : rows[i]) v = -v;
            rhs[i] = -rhs[i];
        }
    }

    // minimize internally
    const bool maximize = p.sense == LpSense::Maximize;
    RatVector costs(n_struct);
    for (std::size_t j = 0; j < n; ++j) {
        costs[col_of[j]] = maximize ? -p.objective[j] : p.objective[j];
        if (split[j]) costs[col_of[j] + 1] = -costs[col_of[j]];
    }

    Simplex sx(std::move(rows), std::move(rhs), n_struct);
    LpResult res;

    if (sx.phase1().sign() > 0) {
        res.status = LpStatus::Infeasible;
        res.pivots = sx.pivot_count_;
        // Phase-1 duals mapped through the row flips give the natural Farkas
        // certificate: u >= 0, u^T a + v^T c = 0, u^T b + v^T d = phase-1 opt > 0.
        RatVector y = sx.duals();
        res.farkas_ineq.resize(mi);
        res.farkas_eq.resize(me);
        for (std::size_t i = 0; i < mi; ++i) res.farkas_ineq[i] = Rational(row_sign[i]) * y[i];
        for (std::size_t j = 0; j < me; ++j) res.farkas_eq[j] = Rational(row_sign[mi + j]) * y[mi + j];
        return res;
    }
    sx.purge_artificials();

    if (!sx.phase2(costs)) {
        res.status = LpStatus::Unbounded;
        res.pivots = sx.pivot_count_;
        RatVector dir = sx.ray();
        res.ray.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            res.ray[j] = split[j] ? dir[col_of[j]] - dir[col_of[j] + 1] : dir[col_of[j]];
        return res;
    }

    res.status = LpStatus::Optimal;
    res.pivots = sx.pivot_count_;
    const RatVector z = sx.solution();
    res.primal.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        res.primal[j] = split[j] ? z[col_of[j]] - z[col_of[j] + 1] : z[col_of[j]];
    res.value = maximize ? -sx.objective() : sx.objective();

    // duals in user convention: value = sum ineq_dual_i b_i + sum eq_dual_j d_j
    RatVector y = sx.duals();
    res.ineq_duals.resize(mi);
    res.eq_duals.resize(me);
    for (std::size_t i = 0; i < mi; ++i) {
        Rational yi = Rational(row_sign[i]) * y[i];
        res.ineq_duals[i] = maximize ? -yi : yi;
    }
    for (std::size_t j = 0; j < me; ++j) {
        Rational yj = Rational(row_sign[mi + j]) * y[mi + j];
        res.eq_duals[j] = maximize ? -yj : yj;
    }
    return res;
}

}  // namespace hypersig
