#pragma once

#include <string>

#include <json.hpp>

#include "dedonder/boundary.hpp"

namespace dedonder {

using Json = nlohmann::ordered_json;

// [{"a", "i", "tail", "label", "value"}] in key order.
Json coefficients_json(const BoundaryCoefficients& p);
// {"degree", "terms": [{"wedge": ["dx[1]", ...], "coefficient"}]} in basis order.
Json form_json(const DifferentialForm& f);
Json vector_field_json(const VectorFieldOnJet& X);

// "p[a;i J] = value" per line.
std::string coefficients_text(const BoundaryCoefficients& p);

}  // namespace dedonder
