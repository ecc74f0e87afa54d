#pragma once

#include <cstddef>
#include <vector>

namespace dedonder {

struct GridDim {
  double lo = 0.0;
  double hi = 1.0;
  int n = 8;
  bool periodic = false;
  bool operator==(const GridDim&) const = default;
};

// Uniform tensor grid, flattened row-major (last dimension fastest).
// Periodic dimensions exclude the upper bound; open ones include both ends.
struct GridSpec {
  std::vector<GridDim> dims;

  void validate() const;  // throws std::invalid_argument
  int ndim() const { return static_cast<int>(dims.size()); }
  std::size_t size() const;
  double spacing(int d) const;
  double coordinate(int d, int j) const;
  std::size_t stride(int d) const;
  std::vector<int> unflatten(std::size_t idx) const;
  std::size_t flatten(const std::vector<int>& idx) const;
  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(std::vector<GridDim> dims);

}  // namespace dedonder
