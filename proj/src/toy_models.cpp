#include "hypersig/toy_models.hpp"

#include "hypersig/vertex_enum.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hypersig {

namespace {

RatMatrix col3(long a, long b, long c) {
    RatMatrix m(3, 1);
    m.at(0, 0) = a;
    m.at(1, 0) = b;
    m.at(2, 0) = c;
    return m;
}

// cos(pi k / 2), sin(pi k / 2) for k = 0..3
constexpr int kCos[4] = {1, 0, -1, 0};
constexpr int kSin[4] = {0, 1, 0, -1};

RatMatrix rotation_matrix(int k, int sign) {
    RatMatrix u(3, 3);
    u.at(0, 0) = kCos[k];
    u.at(0, 1) = -sign * kSin[k];
    u.at(1, 0) = kSin[k];
    u.at(1, 1) = sign * kCos[k];
    u.at(2, 2) = 1;
    return u;
}

}  // namespace

std::vector<ElementaryChannel> elementary_channels() {
    std::vector<ElementaryChannel> out;
    for (int sign : {+1, -1})
        for (int k = 0; k < 4; ++k) out.push_back({k, sign, rotation_matrix(k, sign)});
    return out;
}

SystemSpec build_elementary() {
    SystemSpec s;
    s.linear_dim = 3;
    s.extremal_states = {col3(1, 0, 1), col3(0, 1, 1), col3(-1, 0, 1), col3(0, -1, 1)};
    s.extremal_effects = {col3(1, 1, 1), col3(-1, 1, 1), col3(-1, -1, 1), col3(1, -1, 1)};
    s.unit_effect = col3(0, 0, 1);
    const RatMatrix one = RatMatrix::identity(1);
    for (const auto& ch : elementary_channels())
        s.channels.push_back({ch.matrix, one, false});

    // the whole square is one rotation orbit
    for (int x = 0; x < 4; ++x) {
        if (rotation_matrix(x, +1) * s.extremal_states[0] != s.extremal_states[x])
            throw ConstructionError("build_elementary: state orbit relation failed");
        if (rotation_matrix(x, +1) * s.extremal_effects[0] != s.extremal_effects[x])
            throw ConstructionError("build_elementary: effect orbit relation failed");
    }
    s.validate();
    return s;
}

namespace {

RatMatrix mat3(std::initializer_list<std::initializer_list<long>> rows) {
    return RatMatrix::from_rows(rows);
}

// vertex set equality between a list of 3x3 matrices and enumerated 9-vectors
void check_vertex_set(const std::vector<RatMatrix>& listed, const HPolytope& h,
                      const char* what) {
    std::vector<RatVector> verts = enumerate_vertices(h);
    std::set<RatVector> enumerated(verts.begin(), verts.end());
    std::set<RatVector> expected;
    for (const auto& m : listed) expected.insert(m.flatten());
    if (enumerated != expected)
        throw ConstructionError(std::string("build_bipartite: enumerated ") + what +
                                " polytope vertices do not match the listed matrices");
}

}  // namespace

BipartiteSystem build_bipartite() {
    const SystemSpec sq = build_elementary();
    BipartiteSystem sys;

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            sys.states.push_back(tensor_state(sq.extremal_states[i], sq.extremal_states[j]));

    const RatMatrix omega16 = Rational(1, 2) * mat3({{-1, 1, 0}, {1, 1, 0}, {0, 0, 2}});
    for (int k = 0; k < 4; ++k)
        sys.states.push_back(omega16 * rotation_matrix(k, +1).transpose());
    for (int k = 0; k < 4; ++k)
        sys.states.push_back(omega16 * rotation_matrix(k, -1).transpose());

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            sys.effects.push_back(tensor_effect(sq.extremal_effects[i], sq.extremal_effects[j]));

    const RatMatrix e16 = mat3({{-1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    for (int k = 0; k < 4; ++k) sys.effects.push_back(rotation_matrix(k, +1) * e16);
    for (int k = 0; k < 4; ++k) sys.effects.push_back(rotation_matrix(k, -1) * e16);

    sys.unit_effect = tensor_effect(sq.unit_effect, sq.unit_effect);

    // cross-compatibility of the mixed factorized/entangled blocks
    for (int i = 0; i < 24; ++i) {
        if (probability(sys.unit_effect, sys.states[i]) != Rational(1))
            throw ConstructionError("build_bipartite: state not normalized");
        for (int j = 0; j < 24; ++j) {
            const bool mixed = (i < 16) != (j < 16);
            if (mixed && probability(sys.effects[j], sys.states[i]).sign() < 0)
                throw ConstructionError("build_bipartite: negative mixed-block probability");
        }
    }

    // independent re-derivation: the two polytopes cut out by the factorized
    // block must have exactly these 24 + 24 vertices
    HPolytope state_poly;
    state_poly.ambient_dim = 9;
    for (int j = 0; j < 16; ++j)
        state_poly.inequalities.push_back({sys.effects[j].flatten(), Rational(0)});
    state_poly.equalities.push_back({sys.unit_effect.flatten(), Rational(1)});
    check_vertex_set(sys.states, state_poly, "state");

    HPolytope effect_poly;
    effect_poly.ambient_dim = 9;
    for (int i = 0; i < 16; ++i)
        effect_poly.inequalities.push_back({sys.states[i].flatten(), Rational(0)});
    effect_poly.equalities.push_back({sys.unit_effect.flatten(), Rational(1)});
    check_vertex_set(sys.effects, effect_poly, "effect");

    return sys;
}

std::string BipartiteChannel::name() const {
    auto part = [](int k, int sign) {
        return "U" + std::to_string(k) + (sign > 0 ? "+" : "-");
    };
    return (swap ? "W." : "") + part(left_k, left_sign) + "x" + part(right_k, right_sign);
}

std::vector<BipartiteChannel> bipartite_group(const BipartiteSystem& sys) {
    std::vector<BipartiteChannel> group;
    for (int swap = 0; swap < 2; ++swap) {
        for (int s1 : {+1, -1}) {
            for (int k1 = 0; k1 < 4; ++k1) {
                for (int s2 : {+1, -1}) {
                    for (int k2 = 0; k2 < 4; ++k2) {
                        BipartiteChannel ch;
                        ch.swap = swap != 0;
                        ch.left_k = k1;
                        ch.left_sign = s1;
                        ch.right_k = k2;
                        ch.right_sign = s2;
                        ch.action = {rotation_matrix(k1, s1), rotation_matrix(k2, s2),
                                     ch.swap};
                        group.push_back(std::move(ch));
                    }
                }
            }
        }
    }

    auto find_index = [](const std::vector<RatMatrix>& items, const RatMatrix& m) {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (items[i] == m) return static_cast<int>(i);
        return -1;
    };
    for (auto& ch : group) {
        for (int i = 0; i < 24; ++i) {
            const int si = find_index(sys.states, ch.action.apply(sys.states[i]));
            const int ei = find_index(sys.effects, ch.action.apply(sys.effects[i]));
            if (si < 0 || ei < 0)
                throw ConstructionError("bipartite_group: channel image is not extremal");
            // no channel may move a factorized point into the entangled block
            if ((i < 16) != (si < 16) || (i < 16) != (ei < 16))
                throw ConstructionError("bipartite_group: factorized/entangled block not preserved");
            ch.state_perm[i] = static_cast<std::uint8_t>(si);
            ch.effect_perm[i] = static_cast<std::uint8_t>(ei);
        }
    }

    // group structure: 128 distinct permutation pairs, closed under composition
    std::map<std::pair<std::array<std::uint8_t, 24>, std::array<std::uint8_t, 24>>, std::size_t>
        index_of;
    for (std::size_t i = 0; i < group.size(); ++i)
        index_of[{group[i].state_perm, group[i].effect_perm}] = i;
    if (index_of.size() != 128)
        throw ConstructionError("bipartite_group: expected 128 distinct channels");
    for (const auto& a : group) {
        for (const auto& b : group) {
            std::array<std::uint8_t, 24> sp{}, ep{};
            for (int i = 0; i < 24; ++i) {
                sp[i] = a.state_perm[b.state_perm[i]];
                ep[i] = a.effect_perm[b.effect_perm[i]];
            }
            if (!index_of.count({sp, ep}))
                throw ConstructionError("bipartite_group: composition left the set");
        }
    }
    return group;
}

std::vector<ConsistencyReport> consistency_scan(const BipartiteSystem& sys) {
    const auto elems = elementary_channels();
    std::vector<ConsistencyReport> out;
    for (int x = 16; x < 24; ++x) {
        for (int y = 16; y < 24; ++y) {
            ConsistencyReport rep;
            rep.x = x;
            rep.y = y;
            const RatMatrix u = sys.states[x] * sys.effects[y];
            const bool in_group = std::any_of(elems.begin(), elems.end(),
                                              [&](const auto& e) { return e.matrix == u; });
            if (!in_group) {
                rep.circuit_applicable = false;
                rep.admissible = false;
                out.push_back(std::move(rep));
                continue;
            }
            const RatMatrix& omega = sys.states[x];
            const RatMatrix& effect = sys.effects[y];
            const RatMatrix id = RatMatrix::identity(3);
            bool first = true;
            for (int bits = 0; bits < 16; ++bits) {
                const RatMatrix& u0 = (bits & 1) ? u : id;
                const RatMatrix& u1 = (bits & 2) ? u : id;
                const RatMatrix& u2 = (bits & 4) ? u : id;
                const RatMatrix& u3 = (bits & 8) ? u : id;
                const RatMatrix prod = u3.transpose() * effect.transpose() * u0 * omega *
                                       u1.transpose() * effect * u2 * omega;
                Rational tr;
                for (int i = 0; i < 3; ++i) tr += prod.at(i, i);
                if (first || tr < rep.worst_value) rep.worst_value = tr;
                first = false;
            }
            rep.admissible = rep.worst_value.sign() >= 0;
            out.push_back(std::move(rep));
        }
    }
    return out;
}

bool ToyModel::allows_state(int i) const {
    return std::find(state_indices.begin(), state_indices.end(), i) != state_indices.end();
}

bool ToyModel::allows_effect(int j) const {
    return std::find(effect_indices.begin(), effect_indices.end(), j) != effect_indices.end();
}

namespace {

std::vector<int> range_vec(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

std::vector<ToyModel> classify_models(const std::vector<ConsistencyReport>& scan) {
    std::set<std::pair<int, int>> admissible;
    for (const auto& r : scan)
        if (r.circuit_applicable && r.admissible) admissible.insert({r.x, r.y});

    auto consistent = [&](const std::vector<int>& states, const std::vector<int>& effects) {
        for (int x : states) {
            if (x < 16) continue;
            for (int y : effects) {
                if (y < 16) continue;
                if (!admissible.count({x, y})) return false;
            }
        }
        return true;
    };

    auto annotate = [&](ToyModel m) {
        if (!consistent(m.state_indices, m.effect_indices))
            throw ConstructionError("classify_models: model fails its own consistency scan");
        m.maximal = true;
        for (int k = 16; k < 24; ++k) {
            if (m.allows_state(k) && m.allows_effect(k)) continue;
            auto st = m.state_indices;
            auto ef = m.effect_indices;
            if (!m.allows_state(k)) st.push_back(k);
            if (!m.allows_effect(k)) ef.push_back(k);
            if (consistent(st, ef)) {
                m.maximal = false;
                break;
            }
        }
        return m;
    };

    std::vector<ToyModel> models;
    models.push_back(annotate({"PR", ModelFamily::PR, -1, range_vec(0, 24), range_vec(0, 16)}));
    models.push_back(annotate({"HS", ModelFamily::HS, -1, range_vec(0, 16), range_vec(0, 24)}));
    {
        auto base = range_vec(0, 16);
        auto a = base;
        a.push_back(20);
        a.push_back(22);
        models.push_back(annotate({"Hybrid-A", ModelFamily::HybridA, -1, a, a}));
        auto b = base;
        b.push_back(21);
        b.push_back(23);
        models.push_back(annotate({"Hybrid-B", ModelFamily::HybridB, -1, b, b}));
    }
    for (int ip = 16; ip < 24; ++ip) {
        auto idx = range_vec(0, 16);
        idx.push_back(ip);
        models.push_back(
            annotate({"Frozen-" + std::to_string(ip), ModelFamily::Frozen, ip, idx, idx}));
    }
    return models;
}

std::vector<std::size_t> preserving_channels(const ToyModel& model,
                                             const std::vector<BipartiteChannel>& group) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < group.size(); ++c) {
        bool ok = true;
        for (int i : model.state_indices)
            if (!model.allows_state(group[c].state_perm[i])) { ok = false; break; }
        if (ok)
            for (int j : model.effect_indices)
                if (!model.allows_effect(group[c].effect_perm[j])) { ok = false; break; }
        if (ok) out.push_back(c);
    }
    return out;
}

std::vector<MeasurementClass> dedup_measurements(const std::vector<Measurement>& measurements,
                                                 const std::vector<BipartiteChannel>& group) {
    using Key = std::vector<std::pair<std::size_t, Rational>>;
    auto canonical = [&](const Measurement& m) {
        Key best;
        bool have = false;
        for (const auto& ch : group) {
            Key img;
            for (const auto& e : m.entries) img.emplace_back(ch.effect_perm[e.effect_index], e.weight);
            std::sort(img.begin(), img.end());
            if (!have || img < best) {
                best = std::move(img);
                have = true;
            }
        }
        return best;
    };

    std::map<Key, MeasurementClass> classes;
    for (const auto& m : measurements) {
        Key key = canonical(m);
        auto it = classes.find(key);
        if (it == classes.end()) {
            MeasurementClass mc;
            mc.outcomes = key.size();
            for (const auto& [idx, w] : key) mc.representative.entries.push_back({w, idx});
            mc.orbit_size = 1;
            classes.emplace(std::move(key), std::move(mc));
        } else {
            ++it->second.orbit_size;
        }
    }

    std::vector<MeasurementClass> out;
    for (auto& [key, mc] : classes) out.push_back(std::move(mc));
    std::sort(out.begin(), out.end(), [](const MeasurementClass& a, const MeasurementClass& b) {
        if (a.outcomes != b.outcomes) return a.outcomes < b.outcomes;
        for (std::size_t i = 0; i < a.representative.entries.size(); ++i) {
            const auto& ea = a.representative.entries[i];
            const auto& eb = b.representative.entries[i];
            if (ea.effect_index != eb.effect_index) return ea.effect_index < eb.effect_index;
            if (ea.weight != eb.weight) return ea.weight < eb.weight;
        }
        return false;
    });
    return out;
}

}  // namespace hypersig
