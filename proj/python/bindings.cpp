#include "hypersig/json_io.hpp"
#include "hypersig/vertex_enum.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
namespace hs = hypersig;

namespace {

py::object json_to_py(const hs::json& j) {
    switch (j.type()) {
        case hs::json::value_t::null:
            return py::none();
        case hs::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case hs::json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case hs::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case hs::json::value_t::number_float:
            return py::float_(j.get<double>());
        case hs::json::value_t::string:
            return py::str(j.get<std::string>());
        case hs::json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case hs::json::value_t::object: {
            py::dict out;
            for (const auto& [key, val] : j.items()) out[py::str(key)] = json_to_py(val);
            return out;
        }
        default:
            throw std::runtime_error("unsupported JSON payload");
    }
}

hs::CorrelationMatrix correlation_from_rows(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) throw std::invalid_argument("correlation: empty matrix");
    hs::RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("correlation: ragged rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = hs::Rational::parse(rows[i][j]);
    }
    return hs::CorrelationMatrix::from_matrix(std::move(m));
}

hs::GameMatrix game_from_rows(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) throw std::invalid_argument("game: empty matrix");
    hs::RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = hs::Rational::parse(rows[i][j]);
    return hs::GameMatrix{std::move(m)};
}

}  // namespace

PYBIND11_MODULE(_hypersig, mod) {
    mod.doc() = "exact verification toolkit for square-state toy models and the "
                "classical correlation polytope C(m,n,d)";

    mod.def("vertex_count",
            [](std::size_t m, std::size_t n, std::size_t d) {
                return py::cast(hs::vertex_count(m, n, d).get_str());
            },
            py::arg("m"), py::arg("n"), py::arg("d"),
            "Exact number of vertices of C(m,n,d) as a decimal string.");

    mod.def("count_vertices_by_enumeration",
            [](std::size_t m, std::size_t n, std::size_t d) {
                unsigned long long count = 0;
                hs::vertices_for_each(m, n, d, [&](const hs::VertexDescriptor&) {
                    ++count;
                    return true;
                });
                return count;
            },
            py::arg("m"), py::arg("n"), py::arg("d"),
            "Counts the vertex stream (independent of the closed-form count).");

    mod.def("payoff",
            [](const std::vector<std::vector<std::string>>& game,
               const std::vector<std::vector<std::string>>& p) {
                return hs::payoff(game_from_rows(game), correlation_from_rows(p)).str();
            },
            py::arg("game"), py::arg("p"));

    mod.def("game_max",
            [](const std::vector<std::vector<std::string>>& game, std::size_t d) {
                const auto [value, arg] = hs::game_max(game_from_rows(game), d);
                return py::make_tuple(value.str(), arg.assignment);
            },
            py::arg("game"), py::arg("d"),
            "Closed-form maximum over C(m,n,d); returns (value, argmax assignment).");

    mod.def("membership",
            [](const std::vector<std::vector<std::string>>& p, std::size_t d) {
                const auto corr = correlation_from_rows(p);
                const auto cert = hs::membership(corr, d);
                if (!hs::verify_certificate(corr, d, cert))
                    throw std::runtime_error("certificate failed re-verification");
                return json_to_py(hs::to_json(cert));
            },
            py::arg("p"), py::arg("d"),
            "Exact membership certificate for p in C(m,n,d).");

    mod.def("xi", [] {
        const auto sys = hs::build_bipartite();
        const auto xi = hs::build_xi(sys);
        py::dict out;
        out["matrix"] = json_to_py(hs::to_json(xi.xi.p));
        out["states"] = py::cast(xi.state_indices);
        out["measurement"] = json_to_py(hs::to_json(xi.measurement));
        return out;
    });

    mod.def("verify_xi", [] {
        const auto sys = hs::build_bipartite();
        const auto xi = hs::build_xi(sys);
        const auto rep = hs::verify_hypersignaling(sys, "HS", xi.state_indices, xi.measurement, 4);
        py::dict out;
        out["payoff"] = rep.reference_payoff->str();
        out["classical_max"] = rep.reference_classical_max->str();
        out["hypersignaling"] = rep.confirmed;
        out["witness"] = json_to_py(hs::to_json(rep.witness));
        return out;
    });

    mod.def("consistency_scan", [] {
        const auto sys = hs::build_bipartite();
        py::list admissible;
        for (const auto& r : hs::consistency_scan(sys))
            if (r.circuit_applicable && r.admissible)
                admissible.append(py::make_tuple(r.x, r.y));
        return admissible;
    });

    mod.def("measurement_classes",
            [](const std::string& model_name, unsigned threads) {
                const auto sys = hs::build_bipartite();
                const auto group = hs::bipartite_group(sys);
                const auto models = hs::classify_models(hs::consistency_scan(sys));
                for (const auto& m : models) {
                    if (m.name != model_name) continue;
                    hs::SystemSpec spec;
                    spec.linear_dim = 9;
                    for (int i : m.state_indices) spec.extremal_states.push_back(sys.states[i]);
                    for (int i : m.effect_indices) spec.extremal_effects.push_back(sys.effects[i]);
                    spec.unit_effect = sys.unit_effect;
                    auto meas = hs::enumerate_extremal_measurements(spec, 2, 9, threads);
                    for (auto& mm : meas)
                        for (auto& e : mm.entries) e.effect_index = m.effect_indices[e.effect_index];
                    const auto classes = hs::dedup_measurements(meas, group);
                    py::list out;
                    for (const auto& c : classes) {
                        py::dict item;
                        item["outcomes"] = c.outcomes;
                        item["orbit_size"] = c.orbit_size;
                        item["measurement"] = json_to_py(hs::to_json(c.representative));
                        out.append(item);
                    }
                    return out;
                }
                throw std::invalid_argument("unknown model: " + model_name);
            },
            py::arg("model"), py::arg("threads") = 1);

    mod.def("capacity",
            [](const std::vector<std::vector<std::string>>& p, double tol, std::size_t max_iter) {
                return json_to_py(hs::to_json(
                    hs::capacity_blahut_arimoto(correlation_from_rows(p), tol, max_iter)));
            },
            py::arg("p"), py::arg("tol") = 1e-9, py::arg("max_iter") = 100000);

    mod.def("full_report",
            [](const std::string& model, unsigned threads) {
                return json_to_py(hs::full_report(model, threads));
            },
            py::arg("model"), py::arg("threads") = 1);
}
