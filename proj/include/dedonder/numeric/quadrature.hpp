#pragma once

#include <vector>

#include "dedonder/jet_core.hpp"
#include "dedonder/numeric/grid.hpp"

namespace dedonder {

// End-correction weights γ_0..γ_{r-1} of the Gregory rule, exact rationals
// solving Σ_j γ_j j^p = B_{p+1}/(p+1) (odd p), 0 (even p), p < r.
std::vector<Rational> gregory_corrections(int r);

// Number of end-correction points used on an open dimension of n points.
int gregory_order(int n);

// Weights along one dimension: periodic trapezoid, or trapezoid with Gregory
// end corrections (exact for polynomials of degree < gregory_order(n)).
std::vector<double> quadrature_weights(const GridDim& dim);

// Tensor-product weights over the whole grid.
std::vector<double> quadrature_weights(const GridSpec& g);

// ∫ f over the grid box; fixed reduction order.
double integrate(const GridSpec& g, const std::vector<double>& values);

// ∫ f over the face {x_d = lo or hi} of an open dimension d.
double integrate_face(const GridSpec& g, const std::vector<double>& values, int d, bool upper);

}  // namespace dedonder
