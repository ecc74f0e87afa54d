#include "dedonder/numeric/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dedonder {

void GridSpec::validate() const {
  if (dims.empty()) throw std::invalid_argument("grid has no dimensions");
  for (std::size_t d = 0; d < dims.size(); ++d) {
    const auto& g = dims[d];
    if (g.n < 8)
      throw std::invalid_argument("grid dimension " + std::to_string(d + 1) + " has " +
                                  std::to_string(g.n) + " points; at least 8 are required");
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.hi > g.lo))
      throw std::invalid_argument("grid dimension " + std::to_string(d + 1) +
                                  " needs finite bounds with lo < hi");
  }
}

GridSpec make_grid(std::vector<GridDim> dims) {
  GridSpec g{std::move(dims)};
  g.validate();
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (const auto& g : dims) s *= static_cast<std::size_t>(g.n);
  return s;
}

double GridSpec::spacing(int d) const {
  const auto& g = dims[d];
  return g.periodic ? (g.hi - g.lo) / g.n : (g.hi - g.lo) / (g.n - 1);
}

double GridSpec::coordinate(int d, int j) const { return dims[d].lo + j * spacing(d); }

std::size_t GridSpec::stride(int d) const {
  std::size_t s = 1;
  for (int e = ndim() - 1; e > d; --e) s *= static_cast<std::size_t>(dims[e].n);
  return s;
}

std::vector<int> GridSpec::unflatten(std::size_t idx) const {
  std::vector<int> out(dims.size());
  for (int d = ndim() - 1; d >= 0; --d) {
    out[d] = static_cast<int>(idx % dims[d].n);
    idx /= dims[d].n;
  }
  return out;
}

std::size_t GridSpec::flatten(const std::vector<int>& idx) const {
  std::size_t out = 0;
  for (int d = 0; d < ndim(); ++d) out = out * dims[d].n + idx[d];
  return out;
}

}  // namespace dedonder
