#pragma once

#include "hypersig/analysis.hpp"

#include <json.hpp>

namespace hypersig {

using nlohmann::json;

// Rationals serialize as "a/b" strings (plain "a" for integers); matrices as
// arrays of row arrays.
json to_json(const Rational& r);
json to_json(const RatMatrix& m);
json to_json(const Measurement& m);
json to_json(const CorrelationMatrix& c);
json to_json(const VertexDescriptor& v);
json to_json(const MembershipCertificate& cert);
json to_json(const HypersignalingReport& rep);
json to_json(const CapacityResult& cap);

RatMatrix matrix_from_json(const json& j);
CorrelationMatrix correlation_from_json(const json& j);
GameMatrix game_from_json(const json& j);
Measurement measurement_from_json(const json& j);

/// Full verification pipeline for one model; every certificate embedded.
/// The "paper_checks" block carries the named reproduction booleans.
json full_report(const std::string& model_name, unsigned threads = 1);

/// Chains every check over all models; "all_passed" gates the process exit code.
json full_report_all(unsigned threads = 1);

}  // namespace hypersig
