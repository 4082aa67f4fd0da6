#include "hypersig/analysis.hpp"

#include <cmath>
#include <vector>

namespace hypersig {

XiRealization build_xi(const BipartiteSystem& sys) {
    XiRealization r;
    r.state_indices = {0, 2, 6, 7, 12, 13, 15};
    r.measurement.entries = {{Rational(1, 8), 0},  {Rational(1, 8), 1}, {Rational(1, 8), 6},
                             {Rational(1, 8), 8},  {Rational(1, 8), 10}, {Rational(1, 8), 15},
                             {Rational(1, 4), 23}};

    std::vector<RatMatrix> states;
    for (int i : r.state_indices) states.push_back(sys.states.at(i));
    r.xi = correlation(states, r.measurement, sys.effects, sys.unit_effect);

    RatMatrix target = RatMatrix::from_rows({{1, 0, 0, 0, 0, 1, 0},
                                             {0, 1, 0, 0, 0, 0, 1},
                                             {0, 1, 1, 0, 0, 0, 0},
                                             {0, 0, 1, 0, 0, 0, 1},
                                             {0, 0, 0, 1, 0, 1, 0},
                                             {0, 0, 0, 1, 0, 0, 1},
                                             {0, 0, 0, 0, 1, 1, 0}});
    target = Rational(1, 2) * target;
    if (r.xi.p != target)
        throw ConstructionError("build_xi: computed correlation does not match the target matrix");
    return r;
}

GameMatrix reference_game() {
    RatMatrix g = RatMatrix::from_rows({{2, 0, 0, 0, 0, 1, 0},
                                        {0, 2, 0, 0, 0, 0, 2},
                                        {0, 2, 2, 0, 0, 0, 0},
                                        {0, 0, 2, 0, 0, 0, 2},
                                        {0, 0, 0, 1, 0, 1, 0},
                                        {0, 0, 0, 1, 0, 0, 0},
                                        {0, 0, 0, 0, 2, 1, 0}});
    return GameMatrix{Rational(1, 21) * g};
}

HypersignalingReport verify_hypersignaling(const BipartiteSystem& sys,
                                           const std::string& model_name,
                                           const std::vector<int>& state_indices,
                                           const Measurement& meas, std::size_t K) {
    HypersignalingReport rep;
    rep.realizing_model = model_name;
    rep.state_indices = state_indices;
    rep.measurement = meas;
    rep.classical_dim = K;

    std::vector<RatMatrix> states;
    for (int i : state_indices) states.push_back(sys.states.at(i));
    rep.correlation = correlation(states, meas, sys.effects, sys.unit_effect);

    rep.witness = membership(rep.correlation, K);
    rep.confirmed = rep.witness.verdict == MembershipCertificate::Verdict::Outside;
    if (rep.confirmed && !verify_certificate(rep.correlation, K, rep.witness))
        throw std::logic_error("verify_hypersignaling: certificate failed re-verification");

    const GameMatrix ref = reference_game();
    if (ref.g.rows() == rep.correlation.m && ref.g.cols() == rep.correlation.n) {
        rep.reference_payoff = payoff(ref, rep.correlation);
        rep.reference_classical_max = game_max(ref, K).first;
    }
    return rep;
}

SignalingDimensionProof elementary_signaling_dimension() {
    SignalingDimensionProof proof;
    const SystemSpec squit = build_elementary();

    // lower bound: encode on the antipodal pair (w_0, w_2), decode with the
    // supported pair {e_0, e_2} at weight 1/2 each -> the 2x2 identity
    Measurement antipodal;
    antipodal.entries = {{Rational(1, 2), 0}, {Rational(1, 2), 2}};
    const std::vector<RatMatrix> pair = {squit.extremal_states[0], squit.extremal_states[2]};
    proof.lower_bound_correlation =
        correlation(pair, antipodal, squit.extremal_effects, squit.unit_effect);
    if (proof.lower_bound_correlation.p != RatMatrix::identity(2))
        throw std::logic_error("elementary_signaling_dimension: expected the identity correlation");
    proof.lower_bound_witness = membership(proof.lower_bound_correlation, 1);
    if (proof.lower_bound_witness.verdict != MembershipCertificate::Verdict::Outside)
        throw std::logic_error("elementary_signaling_dimension: identity must lie outside C(2,2,1)");

    // upper bound: every extremal measurement has exactly two outcomes, so any
    // achievable extremal correlation has at most two nonzero columns
    proof.extremal_measurements =
        enumerate_extremal_measurements(squit, 2, squit.linear_dim);
    proof.max_outcomes = 0;
    for (const auto& m : proof.extremal_measurements)
        proof.max_outcomes = std::max(proof.max_outcomes, m.outcomes());
    proof.dimension = proof.max_outcomes;
    return proof;
}

CapacityResult capacity_blahut_arimoto(const CorrelationMatrix& p, double tol,
                                       std::size_t max_iter) {
    if (!(tol > 0)) throw std::invalid_argument("capacity_blahut_arimoto: tolerance must be > 0");
    const std::size_t m = p.m;

    // drop identically-zero output columns (0 log 0 := 0)
    std::vector<std::size_t> cols;
    for (std::size_t y = 0; y < p.n; ++y) {
        bool nonzero = false;
        for (std::size_t x = 0; x < m; ++x)
            if (!p.p.at(x, y).is_zero()) nonzero = true;
        if (nonzero) cols.push_back(y);
    }
    const std::size_t n = cols.size();
    std::vector<std::vector<double>> q(m, std::vector<double>(n));
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t j = 0; j < n; ++j) q[x][j] = p.p.at(x, cols[j]).to_double();

    std::vector<double> prior(m, 1.0 / static_cast<double>(m));
    const double ln2 = std::log(2.0);

    CapacityResult res;
    res.tolerance = tol;
    std::vector<double> out(n), d(m);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t x = 0; x < m; ++x) s += prior[x] * q[x][j];
            out[j] = s;
        }
        double dmax = -1.0;
        for (std::size_t x = 0; x < m; ++x) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (q[x][j] > 0) s += q[x][j] * std::log(q[x][j] / out[j]);
            d[x] = s;
            dmax = std::max(dmax, s);
        }
        double z = 0;
        for (std::size_t x = 0; x < m; ++x) z += prior[x] * std::exp(d[x]);
        const double lower = std::log(z), upper = dmax;

        res.capacity_bits = lower / ln2;
        res.iterations = it;
        if (upper - lower <= tol) {
            res.converged = true;
            return res;
        }
        for (std::size_t x = 0; x < m; ++x) prior[x] *= std::exp(d[x]) / z;
    }
    res.converged = false;
    return res;
}

}  // namespace hypersig
