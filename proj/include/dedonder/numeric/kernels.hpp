#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "dedonder/expr.hpp"
#include "dedonder/numeric/differentiation.hpp"
#include "dedonder/numeric/grid.hpp"

// Data-parallel kernels. Each has a serial reference and an OpenMP version;
// both produce bit-identical results (no floating-point reassociation).
namespace dedonder::kernels {

// Derivative along dimension d of a flattened grid array.
void differentiate_serial(const GridSpec& g, int d, const LineDifferentiator& D, const double* in,
                          double* out);
void differentiate_omp(const GridSpec& g, int d, const LineDifferentiator& D, const double* in,
                       double* out);

// Expr lowered to double coefficients and pointers into sampled arrays.
struct CompiledExpr {
  struct Factor {
    int slot;
    unsigned exp;
  };
  struct Term {
    double coeff;
    std::vector<Factor> factors;
  };
  std::vector<Term> terms;
  std::vector<const double*> slots;
};

using JetTable = std::map<JetCoordinate, std::vector<double>>;

// Throws JetError when e uses a variable absent from the table.
CompiledExpr compile(const Expr& e, const JetTable& table);

void evaluate_serial(const CompiledExpr& e, std::size_t npts, double* out);
void evaluate_omp(const CompiledExpr& e, std::size_t npts, double* out);

// Spectra of (y, ẏ, ÿ, y⃛) for one dependent variable, modes 0..n/2.
using ModeBlock = std::array<std::vector<std::complex<double>>, 4>;

// Exact propagator of y'''' = -ξ⁴ y - 2ξ² ÿ, row r gives the r-th time
// derivative at time dt from the four initial values.
std::array<std::array<double, 4>, 4> mode_propagator(double xi, double dt);

void propagate_modes_serial(double period, double dt, std::vector<ModeBlock>& blocks);
void propagate_modes_omp(double period, double dt, std::vector<ModeBlock>& blocks);

// Σ v[i] w[i] in fixed blocks of kBlock entries, partial sums added in block
// order. The OpenMP version computes blocks concurrently with the same order.
inline constexpr std::size_t kBlock = 1024;
double weighted_sum_serial(const double* v, const double* w, std::size_t n);
double weighted_sum_omp(const double* v, const double* w, std::size_t n);

}  // namespace dedonder::kernels
