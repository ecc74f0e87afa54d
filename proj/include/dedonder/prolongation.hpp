#pragma once

#include <map>
#include <string>
#include <vector>

#include "dedonder/boundary.hpp"

namespace dedonder {

// Y = Y^i(x) ∂/∂x^i + Y^a(x, y) ∂/∂y^a.
struct ProjectableField {
  std::string name;
  std::vector<Expr> base;   // Y^i, index i-1
  std::vector<Expr> fibre;  // Y^a, index a-1

  static ProjectableField zero(const JetConfig& cfg);
  void validate(const JetConfig& cfg) const;  // projectability and ranges
  bool is_vertical() const;
  // Y^i affine in x and Y^a affine in (x, y): the class with closed-form flows.
  bool is_affine() const;
  VectorFieldOnJet as_vector_field() const;
};

// Y^order, components on canonical coordinates up to the given order.
VectorFieldOnJet prolong(const ProjectableField& Y, int order, const JetConfig& cfg);

// Independent characteristic formula: Y_J = D_J(Y^a - z^a_k Y^k) + z^a_{J∪k} Y^k.
// Used to cross-check prolong.
VectorFieldOnJet prolong_characteristic(const ProjectableField& Y, int order, const JetConfig& cfg);

// d/dt at t = 0 of the jet of the flowed section, evaluated at the moving
// base point; central differences in t. Supports affine fields only.
std::map<JetCoordinate, double> flow_oracle(const ProjectableField& Y, int order,
                                            const PolynomialSection& s,
                                            const std::vector<double>& x0, double h,
                                            const JetConfig& cfg);

// prolong(Y, order) evaluated along j^order σ at x0, in the same layout.
std::map<JetCoordinate, double> prolongation_along(const ProjectableField& Y, int order,
                                                   const PolynomialSection& s,
                                                   const std::vector<double>& x0,
                                                   const JetConfig& cfg);

struct SymmetryCheck {
  bool symmetric = false;
  DifferentialForm certificate;  // £_{Y^k} d(L d_m x)
};

SymmetryCheck is_symmetry(const ProjectableField& Y, const Expr& L, const JetConfig& cfg);

// Formal current horizontalize(Y^{2k-1} ⌟ Θ): an (m-1)-form with jet coefficients.
DifferentialForm formal_current(const ProjectableField& Y, const DeDonderForm& theta);

// J = j^{2k-1}σ^*(Y^{2k-1} ⌟ Θ)
DifferentialForm noether_current(const ProjectableField& Y, const DeDonderForm& theta,
                                 const PolynomialSection& s);

}  // namespace dedonder
