// Canonical JSON forms of scalars, morphisms, bases, structure tables and check
// reports. Object keys are sorted, so serialization is byte-stable.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ob/diagrams.hpp"
#include "ob/quotients.hpp"
#include "ob/scalar.hpp"
#include "ob/verify.hpp"

namespace obtool {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Integers as numbers (strings when they overflow 64 bits), rationals as "p/q",
// polynomials as a list of {"coeff", "vars"} in canonical term order.
Json scalar_json(const ob::Scalar& s);
// {"match": [[input, output], ...], "dots": {"output": count}, "coeff": scalar}
Json diagram_json(const ob::NormalDiagram& d, const ob::Scalar& coeff);
Json morphism_json(const ob::Morphism& m);
Json basis_json(const std::vector<ob::BasisElement>& basis);
Json structure_json(const ob::StructureTable& table);
Json report_json(const ob::CheckReport& r, bool with_timing);

// Top-level document with "schema" and "command".
Json document(const std::string& command);
std::string dump(const Json& j);

}  // namespace obtool
