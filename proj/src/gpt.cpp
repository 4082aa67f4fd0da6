#include "hypersig/gpt.hpp"

#include "hypersig/linalg.hpp"
#include "hypersig/lp.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace hypersig {

RatMatrix ChannelAction::apply(const RatMatrix& m) const {
    RatMatrix out = left * m * right.transpose();
    return swap_after ? out.transpose() : out;
}

void SystemSpec::validate() const {
    for (const auto& w : extremal_states) {
        if (probability(unit_effect, w) != Rational(1))
            throw std::logic_error("SystemSpec: state not normalized on the unit effect");
        for (const auto& e : extremal_effects) {
            if (probability(e, w).sign() < 0)
                throw std::logic_error("SystemSpec: negative probability on extremal pair");
        }
    }
    auto is_permutation = [](const std::vector<RatMatrix>& items, const ChannelAction& ch) {
        std::vector<bool> hit(items.size(), false);
        for (const auto& x : items) {
            const RatMatrix y = ch.apply(x);
            bool found = false;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (!hit[i] && items[i] == y) {
                    hit[i] = true;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    for (const auto& ch : channels) {
        if (!is_permutation(extremal_states, ch) || !is_permutation(extremal_effects, ch))
            throw std::logic_error("SystemSpec: channel does not permute the extremal sets");
    }
}

Rational probability(const RatMatrix& effect, const RatMatrix& state) {
    return hs_dot(effect, state);
}

namespace {
RatMatrix outer_columns(const RatMatrix& a, const RatMatrix& b, const char* what) {
    if (a.cols() != 1 || b.cols() != 1)
        throw std::invalid_argument(std::string(what) + ": expects column vectors");
    RatMatrix m(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) m.at(i, j) = a.at(i, 0) * b.at(j, 0);
    return m;
}
}  // namespace

RatMatrix tensor_state(const RatMatrix& a, const RatMatrix& b) {
    return outer_columns(a, b, "tensor_state");
}

RatMatrix tensor_effect(const RatMatrix& a, const RatMatrix& b) {
    return outer_columns(a, b, "tensor_effect");
}

CorrelationMatrix CorrelationMatrix::from_matrix(RatMatrix p) {
    CorrelationMatrix c;
    c.m = p.rows();
    c.n = p.cols();
    for (std::size_t x = 0; x < c.m; ++x) {
        Rational row_sum;
        for (std::size_t y = 0; y < c.n; ++y) {
            if (p.at(x, y).sign() < 0)
                throw std::invalid_argument("CorrelationMatrix: negative entry");
            row_sum += p.at(x, y);
        }
        if (row_sum != Rational(1))
            throw std::invalid_argument("CorrelationMatrix: row does not sum to 1");
    }
    c.p = std::move(p);
    return c;
}

CorrelationMatrix correlation(const std::vector<RatMatrix>& states, const Measurement& meas,
                              const std::vector<RatMatrix>& effects, const RatMatrix& unit) {
    RatMatrix acc(unit.rows(), unit.cols());
    for (const auto& [w, idx] : meas.entries) {
        if (w.sign() <= 0) throw std::invalid_argument("correlation: non-positive weight");
        acc = acc + w * effects.at(idx);
    }
    if (acc != unit)
        throw std::invalid_argument("correlation: measurement does not sum to the unit effect");

    RatMatrix p(states.size(), meas.entries.size());
    for (std::size_t x = 0; x < states.size(); ++x) {
        for (std::size_t y = 0; y < meas.entries.size(); ++y) {
            const auto& [w, idx] = meas.entries[y];
            Rational v = w * probability(effects.at(idx), states[x]);
            if (v.sign() < 0)
                throw ModelInconsistency("correlation: negative probability for state " +
                                         std::to_string(x) + ", outcome " + std::to_string(y));
            p.at(x, y) = v;
        }
    }
    return CorrelationMatrix::from_matrix(std::move(p));
}

bool measurement_supported(const std::vector<RatMatrix>& effects, const RatMatrix& unit) {
    if (effects.empty()) return false;
    const std::size_t n = effects.size();
    const std::size_t dim = unit.rows() * unit.cols();

    // variables (p_0..p_{n-1}, t): maximize t  s.t.  sum p_y E_y = unit, p_y - t >= 0
    LpProblem prob;
    prob.sense = LpSense::Maximize;
    prob.objective.assign(n + 1, Rational(0));
    prob.objective[n] = 1;
    prob.constraints.ambient_dim = n + 1;
    const RatVector target = unit.flatten();
    for (std::size_t k = 0; k < dim; ++k) {
        LinearConstraint eq;
        eq.normal.assign(n + 1, Rational(0));
        for (std::size_t y = 0; y < n; ++y) eq.normal[y] = effects[y].flatten()[k];
        eq.offset = target[k];
        prob.constraints.equalities.push_back(std::move(eq));
    }
    for (std::size_t y = 0; y < n; ++y) {
        LinearConstraint ge;
        ge.normal.assign(n + 1, Rational(0));
        ge.normal[y] = 1;
        ge.normal[n] = -1;
        ge.offset = 0;
        prob.constraints.inequalities.push_back(std::move(ge));
    }
    const LpResult r = lp_solve(prob);
    if (r.status == LpStatus::Unbounded) return true;
    return r.status == LpStatus::Optimal && r.value.sign() > 0;
}

namespace {

bool is_zero_vec(const RatVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// DFS over index-sorted subsets of effects. The echelon basis prunes linearly
// dependent branches; the residual stack tracks the unit effect reduced
// against the chosen effects, so the (expensive) decomposition runs only when
// the unit actually lies in their span.
struct MeasurementDfs {
    const std::vector<RatVector>& vecs;
    std::size_t n_min, n_max;
    EchelonBasis basis;
    std::vector<std::size_t> chosen;
    std::vector<RatVector> residuals;  // residuals[k]: unit reduced against chosen[0..k)
    std::vector<Measurement>& out;

    MeasurementDfs(const std::vector<RatVector>& v, const RatVector& unit, std::size_t lo,
                   std::size_t hi, std::vector<Measurement>& sink)
        : vecs(v), n_min(lo), n_max(hi), basis(unit.size()), out(sink) {
        residuals.push_back(unit);
    }

    void try_emit() {
        if (chosen.size() < n_min || !is_zero_vec(residuals.back())) return;
        RatMatrix a(vecs[0].size(), chosen.size());
        for (std::size_t j = 0; j < chosen.size(); ++j)
            for (std::size_t i = 0; i < vecs[0].size(); ++i) a.at(i, j) = vecs[chosen[j]][i];
        auto w = solve_unique(a, residuals.front());
        if (!w) return;
        for (const auto& x : *w)
            if (x.sign() <= 0) return;
        Measurement m;
        for (std::size_t j = 0; j < chosen.size(); ++j) m.entries.push_back({(*w)[j], chosen[j]});
        out.push_back(std::move(m));
    }

    void run(std::size_t first) {
        try_emit();
        if (chosen.size() == n_max) return;
        for (std::size_t j = first; j < vecs.size(); ++j) {
            if (!basis.push(vecs[j])) continue;  // dependent: no superset can recover
            const auto& [pivot, row] = basis.back();
            RatVector r = residuals.back();
            if (!r[pivot].is_zero()) {
                const Rational f = r[pivot];
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= f * row[i];
            }
            residuals.push_back(std::move(r));
            chosen.push_back(j);
            run(j + 1);
            chosen.pop_back();
            residuals.pop_back();
            basis.pop();
        }
    }
};

}  // namespace

std::vector<Measurement> enumerate_extremal_measurements(const SystemSpec& sys,
                                                         std::size_t n_min, std::size_t n_max,
                                                         unsigned threads) {
    if (n_max > sys.linear_dim)
        throw std::invalid_argument(
            "enumerate_extremal_measurements: n_max exceeds the linear dimension");
    if (n_min < 2) n_min = 2;  // a single outcome is the trivial unit-effect measurement

    const std::size_t n = sys.extremal_effects.size();
    std::vector<RatVector> vecs(n);
    for (std::size_t i = 0; i < n; ++i) vecs[i] = sys.extremal_effects[i].flatten();
    const RatVector unit_vec = sys.unit_effect.flatten();

    // one root task per leading effect index; concatenation in index order
    // makes parallel output identical to the serial scan
    std::vector<std::vector<Measurement>> partial(n);
    auto run_root = [&](std::size_t root) {
        MeasurementDfs dfs(vecs, unit_vec, n_min, n_max, partial[root]);
        if (!dfs.basis.push(vecs[root])) return;
        const auto& [pivot, row] = dfs.basis.back();
        RatVector r = dfs.residuals.back();
        if (!r[pivot].is_zero()) {
            const Rational f = r[pivot];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= f * row[i];
        }
        dfs.residuals.push_back(std::move(r));
        dfs.chosen.push_back(root);
        dfs.run(root + 1);
    };

    if (threads <= 1) {
        for (std::size_t root = 0; root < n; ++root) run_root(root);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t root = next.fetch_add(1);
                    if (root >= n) return;
                    run_root(root);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<Measurement> out;
    for (auto& part : partial)
        for (auto& m : part) out.push_back(std::move(m));
    return out;
}

}  // namespace hypersig
