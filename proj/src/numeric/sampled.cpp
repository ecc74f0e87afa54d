#include "dedonder/numeric/sampled.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace dedonder {

void SampledSection::validate() const {
  grid.validate();
  for (const auto& v : values)
    if (v.size() != grid.size()) throw std::invalid_argument("sampled section shape mismatch");
}

SampledSection sample_section(const GridSpec& g, const std::vector<PointFn>& components) {
  g.validate();
  SampledSection s{g, {}};
  std::vector<double> x(g.ndim());
  for (const auto& f : components) {
    std::vector<double> v(g.size());
    for (std::size_t p = 0; p < v.size(); ++p) {
      auto idx = g.unflatten(p);
      for (int d = 0; d < g.ndim(); ++d) x[d] = g.coordinate(d, idx[d]);
      v[p] = f(x);
    }
    s.values.push_back(std::move(v));
  }
  return s;
}

SampledSection sample_section(const GridSpec& g, const PolynomialSection& s) {
  s.validate();
  std::vector<PointFn> fns;
  for (const auto& c : s.components)
    fns.push_back([c](const std::vector<double>& x) {
      return evaluate(c, [&](const JetCoordinate& v) {
        if (!v.is_base()) throw JetError("cannot sample a section with symbolic coefficients");
        return x.at(v.index - 1);
      });
    });
  return sample_section(g, fns);
}

std::vector<double> differentiate(const GridSpec& g, int d, const std::vector<double>& v) {
  LineDifferentiator D(g.dims[d]);
  std::vector<double> out(v.size());
  kernels::differentiate_omp(g, d, D, v.data(), out.data());
  return out;
}

kernels::JetTable numeric_jet(const SampledSection& s, int order, const JetConfig& cfg) {
  s.validate();
  if (s.grid.ndim() != cfg.m || s.n() != cfg.n)
    throw std::invalid_argument("numeric_jet: section shape does not match (m, n)");
  if (order < 0 || order > cfg.working_order())
    throw JetError("numeric_jet: order " + std::to_string(order) + " outside [0, 2k-1]");
  const GridSpec& g = s.grid;
  std::vector<std::unique_ptr<LineDifferentiator>> diff;
  for (const auto& d : g.dims) diff.push_back(std::make_unique<LineDifferentiator>(d));

  kernels::JetTable table;
  for (int d = 0; d < g.ndim(); ++d) {
    std::vector<double> col(g.size());
    for (std::size_t p = 0; p < col.size(); ++p) col[p] = g.coordinate(d, g.unflatten(p)[d]);
    table.emplace(JetCoordinate::base(d + 1), std::move(col));
  }
  for (int a = 1; a <= cfg.n; ++a) table.emplace(JetCoordinate::field(a), s.values[a - 1]);
  for (int l = 1; l <= order; ++l) {
    for (int a = 1; a <= cfg.n; ++a) {
      for (const MultiIndex& I : enumerate_multi_indices(cfg.m, l)) {
        const int last = I[l - 1];
        const auto& parent = table.at(JetCoordinate::jet(a, I.without(l - 1)));
        std::vector<double> out(g.size());
        kernels::differentiate_omp(g, last - 1, *diff[last - 1], parent.data(), out.data());
        table.emplace(JetCoordinate::jet(a, I), std::move(out));
      }
    }
  }
  for (const auto& [c, v] : table)
    for (double x : v)
      if (!std::isfinite(x)) throw std::runtime_error("numeric_jet: non-finite value in " + c.to_string());
  return table;
}

std::vector<double> evaluate_on_grid(const Expr& e, const kernels::JetTable& table, std::size_t npts) {
  std::vector<double> out(npts);
  auto ce = kernels::compile(e, table);
  kernels::evaluate_omp(ce, npts, out.data());
  return out;
}

}  // namespace dedonder
