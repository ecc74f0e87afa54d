#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dedonder/numeric/kernels.hpp"

namespace dedonder {

// Cauchy data (y, ẏ, ÿ, y⃛) per dependent variable on a periodic line.
struct CauchyState {
  GridDim space;
  double t = 0.0;
  std::vector<std::array<std::vector<double>, 4>> fields;

  void validate() const;
  double coordinate(int j) const { return space.lo + j * (space.hi - space.lo) / space.n; }
};

// Exact per-mode evolution of y_tttt - 2 y_ttxx + y_xxxx = 0 to t_target.
CauchyState cauchy_evolve(const CauchyState& state, double t_target);
// Same, using the serial reference kernel.
CauchyState cauchy_evolve_serial(const CauchyState& state, double t_target);

using LineFn = std::function<double(double x)>;
CauchyState make_cauchy_state(const GridDim& space, double t,
                              const std::vector<std::array<LineFn, 4>>& data);

// Jets of the evolving section on the slice {x^1 = t}, x^2 = x: z^a_I is
// ∂_x^r of the c-th time derivative, c = count of 1s in I (c <= 3).
kernels::JetTable slice_jets(const CauchyState& state, const JetConfig& cfg);

}  // namespace dedonder
