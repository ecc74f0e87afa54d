#pragma once

#include <functional>
#include <vector>

#include "dedonder/numeric/kernels.hpp"
#include "dedonder/section.hpp"

namespace dedonder {

struct SampledSection {
  GridSpec grid;
  std::vector<std::vector<double>> values;  // per a, flattened over the grid
  int n() const { return static_cast<int>(values.size()); }
  void validate() const;
};

using PointFn = std::function<double(const std::vector<double>& x)>;

SampledSection sample_section(const GridSpec& g, const std::vector<PointFn>& components);
SampledSection sample_section(const GridSpec& g, const PolynomialSection& s);

// Base coordinates, field values and all jets up to `order`, keyed by
// coordinate. Mixed partials are taken in canonical index order.
kernels::JetTable numeric_jet(const SampledSection& s, int order, const JetConfig& cfg);

// Samples of an Expr over a jet table.
std::vector<double> evaluate_on_grid(const Expr& e, const kernels::JetTable& table, std::size_t npts);

// Derivative of a sampled array along dimension d (0-based).
std::vector<double> differentiate(const GridSpec& g, int d, const std::vector<double>& v);

}  // namespace dedonder
