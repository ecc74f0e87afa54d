#include "dedonder/numeric/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace dedonder {

double integrate_action(const Expr& L, const SampledSection& s, const JetConfig& cfg) {
  check_lagrangian(L, cfg);
  if (L.is_zero()) return 0.0;
  auto table = numeric_jet(s, std::max(0, L.jet_order()), cfg);
  return integrate(s.grid, evaluate_on_grid(L, table, s.grid.size()));
}

DecompositionTerms decomposition_terms(const PhiDecomposition& dec, const BoundaryForm& xi,
                                       const ProjectableField& Y, const SampledSection& s) {
  const JetConfig& cfg = xi.cfg;
  if (!Y.is_vertical()) throw std::invalid_argument("decomposition_terms: Y must be vertical");
  if (!(dec.cfg == cfg)) throw std::invalid_argument("decomposition_terms: configurations differ");
  const GridSpec& g = s.grid;
  const std::size_t npts = g.size();
  auto table = numeric_jet(s, cfg.working_order(), cfg);
  const Wedge vol = [&] {
    Wedge w;
    for (int i = 1; i <= cfg.m; ++i) w.push_back(dx(i));
    return w;
  }();

  DecompositionTerms out;
  if (Y.fibre.empty()) return out;

  // total: Y^k ⌟ Φ has only a d_m x part for vertical Y
  DifferentialForm phi = dec.assemble();
  if (!phi.is_zero()) {
    DifferentialForm yphi = horizontalize(interior_product(prolong(Y, cfg.k, cfg), phi), cfg);
    out.total = integrate(g, evaluate_on_grid(yphi.coefficient(vol), table, npts));
  }

  // body: (Φ_a - ∂_i P^i_a) Y^a with P^i_a = p^{i}_a sampled and differentiated numerically
  std::vector<double> body(npts, 0.0);
  for (int a = 1; a <= cfg.n; ++a) {
    if (Y.fibre[a - 1].is_zero()) continue;
    std::vector<double> f = evaluate_on_grid(dec.component(a, {}), table, npts);
    for (int i = 1; i <= cfg.m; ++i) {
      Expr Pi = xi.coefficients.get(a, i, {});
      if (Pi.is_zero()) continue;
      auto dP = differentiate(g, i - 1, evaluate_on_grid(Pi, table, npts));
      for (std::size_t p = 0; p < npts; ++p) f[p] -= dP[p];
    }
    auto Ya = evaluate_on_grid(Y.fibre[a - 1], table, npts);
    for (std::size_t p = 0; p < npts; ++p) body[p] += f[p] * Ya[p];
  }
  out.body = integrate(g, body);

  // boundary: F^i ω_i with ω_i = (-1)^{i-1} dx^1..^dx^i(omitted)..^dx^m
  if (!xi.xi.is_zero()) {
    DifferentialForm flux =
        horizontalize(interior_product(prolong(Y, cfg.working_order(), cfg), xi.xi), cfg);
    for (int i = 1; i <= cfg.m; ++i) {
      if (g.dims[i - 1].periodic) continue;
      Wedge w;
      for (int j = 1; j <= cfg.m; ++j)
        if (j != i) w.push_back(dx(j));
      Expr Fi = flux.coefficient(w);
      if (Fi.is_zero()) continue;
      if (i % 2 == 0) Fi = -Fi;
      auto vals = evaluate_on_grid(Fi, table, npts);
      out.boundary += integrate_face(g, vals, i - 1, true) - integrate_face(g, vals, i - 1, false);
    }
  }
  return out;
}

std::vector<double> bump_function(const GridSpec& g, const std::vector<int>& center, int radius) {
  if (static_cast<int>(center.size()) != g.ndim()) throw std::invalid_argument("bump center dimension");
  std::vector<double> b(g.size());
  for (std::size_t p = 0; p < b.size(); ++p) {
    auto idx = g.unflatten(p);
    double v = 1.0;
    for (int d = 0; d < g.ndim() && v != 0.0; ++d) {
      int off = idx[d] - center[d];
      if (g.dims[d].periodic) {
        const int n = g.dims[d].n;
        off = ((off % n) + n) % n;
        if (off > n / 2) off -= n;
      }
      double rho = static_cast<double>(off) / radius;
      v *= std::abs(rho) < 1.0 ? std::exp(-1.0 / (1.0 - rho * rho)) : 0.0;
    }
    b[p] = v;
  }
  return b;
}

double functional_derivative_oracle(const Expr& L, const SampledSection& s, int a,
                                    const std::vector<int>& center, double eps,
                                    const JetConfig& cfg, int radius) {
  if (a < 1 || a > cfg.n) throw std::invalid_argument("oracle: field index out of range");
  if (!(eps > 0.0)) throw std::invalid_argument("oracle: step must be positive");
  const GridSpec& g = s.grid;
  if (static_cast<int>(center.size()) != g.ndim()) throw std::invalid_argument("oracle: center dimension");
  // The perturbation and its k derivatives must vanish near open ends.
  const int reach = radius + 2 * cfg.k + 4;
  for (int d = 0; d < g.ndim(); ++d) {
    if (g.dims[d].periodic) {
      if (2 * radius >= g.dims[d].n) throw std::invalid_argument("oracle: bump wider than the period");
    } else if (center[d] - reach < 0 || center[d] + reach > g.dims[d].n - 1) {
      throw std::invalid_argument("oracle: bump too close to the boundary");
    }
  }
  auto b = bump_function(g, center, radius);
  auto shifted = [&](double sign) {
    SampledSection t = s;
    for (std::size_t p = 0; p < b.size(); ++p) t.values[a - 1][p] += sign * eps * b[p];
    return integrate_action(L, t, cfg);
  };
  const double mass = integrate(g, b);
  return (shifted(1.0) - shifted(-1.0)) / (2.0 * eps * mass);
}

double energy_integral(const CauchyState& state, const DeDonderForm& theta) {
  const JetConfig& cfg = theta.cfg;
  if (cfg.m != 2) throw std::invalid_argument("energy_integral: needs m = 2 (t, x)");
  ProjectableField YT = ProjectableField::zero(cfg);
  YT.base[0] = Expr(1);
  DifferentialForm J = formal_current(YT, theta);
  Expr density = J.coefficient({dx(2)});
  if (density.is_zero()) return 0.0;
  auto table = slice_jets(state, cfg);
  GridSpec line{{state.space}};
  return integrate(line, evaluate_on_grid(density, table, line.size()));
}

}  // namespace dedonder
