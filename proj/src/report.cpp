#include "dedonder/report.hpp"

#include <sstream>

namespace dedonder {

Json coefficients_json(const BoundaryCoefficients& p) {
  Json out = Json::array();
  for (const auto& [key, v] : p.p) {
    Json tail = Json::array();
    for (int j : key.tail) tail.push_back(j);
    out.push_back(Json{{"a", key.a},
                       {"i", key.i},
                       {"tail", tail},
                       {"label", key.to_string()},
                       {"value", v.to_string()}});
  }
  return out;
}

Json form_json(const DifferentialForm& f) {
  Json terms = Json::array();
  for (const auto& [w, c] : f.terms()) {
    Json wedge = Json::array();
    for (const auto& b : w) wedge.push_back(basis_to_string(b));
    terms.push_back(Json{{"wedge", wedge}, {"coefficient", c.to_string()}});
  }
  return Json{{"degree", f.degree()}, {"terms", terms}};
}

Json vector_field_json(const VectorFieldOnJet& X) {
  Json out = Json::object();
  for (const auto& [c, v] : X.components()) out[c.to_string()] = v.to_string();
  return out;
}

std::string coefficients_text(const BoundaryCoefficients& p) {
  std::ostringstream os;
  for (const auto& [key, v] : p.p) os << key.to_string() << " = " << v.to_string() << '\n';
  return os.str();
}

}  // namespace dedonder
