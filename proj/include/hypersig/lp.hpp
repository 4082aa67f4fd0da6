#pragma once

#include "hypersig/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hypersig {

/// One linear constraint <normal, x> (>= | ==) offset.
struct LinearConstraint {
    RatVector normal;
    Rational offset;
};

/// H-description of a polyhedron: inequalities <a,x> >= b plus equalities.
struct HPolytope {
    std::size_t ambient_dim = 0;
    std::vector<LinearConstraint> inequalities;
    std::vector<LinearConstraint> equalities;

    void validate() const;
};

enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
    RatVector objective;
    HPolytope constraints;
    LpSense sense = LpSense::Maximize;
    /// Per-variable sign restriction (empty: all variables free). Restricted
    /// variables take one simplex column instead of a split pair.
    std::vector<bool> nonneg;
};

/// Exact LP result. At Optimal the primal satisfies every constraint exactly,
/// strong duality holds exactly, and complementary slackness holds exactly:
///   value = sum_i ineq_dual[i] * b_i + sum_j eq_dual[j] * d_j,
/// with ineq_dual[i] == 0 whenever inequality i is slack.
/// At Unbounded, `ray` is a feasible direction improving the objective.
/// At Infeasible, (farkas_ineq, farkas_eq) certifies infeasibility:
///   sum_i u_i a_i + sum_j v_j c_j = 0, u >= 0, sum u_i b_i + sum v_j d_j > 0.
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RatVector primal;
    RatVector ineq_duals;
    RatVector eq_duals;
    RatVector ray;
    RatVector farkas_ineq;
    RatVector farkas_eq;
    std::size_t pivots = 0;  // simplex pivot count, for diagnostics
};

/// Exact rational simplex (two-phase, Bland's anti-cycling rule).
LpResult lp_solve(const LpProblem& p);

}  // namespace hypersig
