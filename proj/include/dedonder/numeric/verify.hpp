#pragma once

#include <vector>

#include "dedonder/numeric/cauchy.hpp"
#include "dedonder/numeric/quadrature.hpp"
#include "dedonder/numeric/sampled.hpp"
#include "dedonder/prolongation.hpp"

namespace dedonder {

// ∫ L(j^k s) d_m x over the grid of s.
double integrate_action(const Expr& L, const SampledSection& s, const JetConfig& cfg);

struct DecompositionTerms {
  double total = 0.0;     // ∫ j*(Y^k ⌟ Φ)
  double body = 0.0;      // ∫ (Φ_a - P^i_{a,i}) Y^a d_m x
  double boundary = 0.0;  // ∫_{∂K} j*(Y^{2k-1} ⌟ Ξ)
};

// Box region = the grid of s. Faces of periodic dimensions cancel and are
// skipped. Y must be vertical.
DecompositionTerms decomposition_terms(const PhiDecomposition& dec, const BoundaryForm& xi,
                                       const ProjectableField& Y, const SampledSection& s);

// Tensor-product C∞ bump exp(-1/(1-ρ²)) per dimension, ρ = offset/(radius·h).
std::vector<double> bump_function(const GridSpec& g, const std::vector<int>& center, int radius);

// [A(s + εb) - A(s - εb)] / (2ε ∫b) for the bump b of field a.
double functional_derivative_oracle(const Expr& L, const SampledSection& s, int a,
                                    const std::vector<int>& center, double eps,
                                    const JetConfig& cfg, int radius = 8);

// ∫ over the slice of the dx^2 coefficient of j*(Y_T^{2k-1} ⌟ Θ), Y_T = ∂/∂x^1.
double energy_integral(const CauchyState& state, const DeDonderForm& theta);

}  // namespace dedonder
