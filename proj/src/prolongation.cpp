#include "dedonder/prolongation.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace dedonder {

ProjectableField ProjectableField::zero(const JetConfig& cfg) {
  ProjectableField Y;
  Y.base.assign(cfg.m, Expr());
  Y.fibre.assign(cfg.n, Expr());
  return Y;
}

void ProjectableField::validate(const JetConfig& cfg) const {
  if (static_cast<int>(base.size()) != cfg.m || static_cast<int>(fibre.size()) != cfg.n)
    throw JetError("field '" + name + "' has the wrong number of components");
  for (int i = 0; i < cfg.m; ++i)
    if (base[i].depends_on([&](const JetCoordinate& v) {
          return !v.is_base() || v.index > cfg.m;
        }))
      throw JetError("field '" + name + "': x[" + std::to_string(i + 1) +
                     "] component must depend on x only (projectability)");
  for (int a = 0; a < cfg.n; ++a)
    if (fibre[a].depends_on([&](const JetCoordinate& v) {
          return v.is_jet() || v.is_coefficient() || !v.valid_for(cfg);
        }))
      throw JetError("field '" + name + "': y[" + std::to_string(a + 1) +
                     "] component must depend on x and y only");
}

bool ProjectableField::is_vertical() const {
  for (const auto& c : base)
    if (!c.is_zero()) return false;
  return true;
}

bool ProjectableField::is_affine() const {
  auto affine = [](const Expr& e) {
    for (const auto& t : e.terms())
      if (monomial_degree(t.mono) > 1) return false;
    return true;
  };
  for (const auto& c : base)
    if (!affine(c)) return false;
  for (const auto& c : fibre)
    if (!affine(c)) return false;
  return true;
}

VectorFieldOnJet ProjectableField::as_vector_field() const {
  VectorFieldOnJet X;
  for (std::size_t i = 0; i < base.size(); ++i) X.set(JetCoordinate::base(int(i) + 1), base[i]);
  for (std::size_t a = 0; a < fibre.size(); ++a) X.set(JetCoordinate::field(int(a) + 1), fibre[a]);
  return X;
}

VectorFieldOnJet prolong(const ProjectableField& Y, int order, const JetConfig& cfg) {
  cfg.validate();
  Y.validate(cfg);
  if (order < 1 || order > cfg.working_order())
    throw JetError("prolong: order outside [1, 2k-1]");
  VectorFieldOnJet out = Y.as_vector_field();
  // ∂_j Y^k, reused at every level
  std::vector<std::vector<Expr>> dbase(cfg.m + 1, std::vector<Expr>(cfg.m + 1));
  for (int j = 1; j <= cfg.m; ++j)
    for (int k = 1; k <= cfg.m; ++k) dbase[j][k] = partial(Y.base[k - 1], JetCoordinate::base(j));

  for (int a = 1; a <= cfg.n; ++a) {
    std::map<MultiIndex, Expr> comp;
    comp.emplace(MultiIndex{}, Y.fibre[a - 1]);
    for (int l = 1; l <= order; ++l) {
      for (const MultiIndex& J : enumerate_multi_indices(cfg.m, l)) {
        // Average of D_j Y_{J\j} - z_{(J\j)∪k} ∂_j Y^k over every removal position.
        Expr acc;
        for (int pos = 0; pos < l; ++pos) {
          int j = J[pos];
          MultiIndex rest = J.without(pos);
          acc += total_derivative(comp.at(rest), j, cfg, order);
          for (int k = 1; k <= cfg.m; ++k)
            if (!dbase[j][k].is_zero())
              acc -= Expr::z(a, rest.with(k)) * dbase[j][k];
        }
        acc *= make_rational(1, l);
        out.set(JetCoordinate::jet(a, J), acc);
        comp.emplace(J, std::move(acc));
      }
    }
  }
  return out;
}

VectorFieldOnJet prolong_characteristic(const ProjectableField& Y, int order, const JetConfig& cfg) {
  cfg.validate();
  Y.validate(cfg);
  VectorFieldOnJet out = Y.as_vector_field();
  for (int a = 1; a <= cfg.n; ++a) {
    Expr Q = Y.fibre[a - 1];
    for (int k = 1; k <= cfg.m; ++k) Q -= Expr::z(a, MultiIndex{}.with(k)) * Y.base[k - 1];
    for (int l = 1; l <= order; ++l) {
      for (const MultiIndex& J : enumerate_multi_indices(cfg.m, l)) {
        Expr v = total_derivative(Q, J, cfg, order + 1);
        for (int k = 1; k <= cfg.m; ++k) v += Expr::z(a, J.with(k)) * Y.base[k - 1];
        out.set(JetCoordinate::jet(a, J), v);
      }
    }
  }
  return out;
}

namespace {

// Reads e = Σ_v L_v v + c over the listed variables; throws if not affine.
std::vector<double> affine_row(const Expr& e, const std::vector<JetCoordinate>& vars,
                               double& constant) {
  std::vector<double> row(vars.size(), 0.0);
  constant = 0.0;
  for (const auto& t : e.terms()) {
    if (t.mono.empty()) {
      constant += t.coeff.get_d();
      continue;
    }
    if (t.mono.size() != 1 || t.mono[0].exp != 1) throw JetError("flow_oracle: field is not affine");
    auto it = std::find(vars.begin(), vars.end(), t.mono[0].var);
    if (it == vars.end()) throw JetError("flow_oracle: unexpected variable");
    row[it - vars.begin()] += t.coeff.get_d();
  }
  return row;
}

double eval_at(const Expr& e, const std::vector<double>& x0) {
  return evaluate(e, [&](const JetCoordinate& v) {
    if (!v.is_base()) throw JetError("expected a polynomial in x");
    return x0.at(v.index - 1);
  });
}

}  // namespace

std::map<JetCoordinate, double> prolongation_along(const ProjectableField& Y, int order,
                                                   const PolynomialSection& s,
                                                   const std::vector<double>& x0,
                                                   const JetConfig& cfg) {
  VectorFieldOnJet P = prolong(Y, order, cfg);
  SectionJets jets(s);
  auto value = [&](const JetCoordinate& v) -> double {
    if (v.is_base()) return x0.at(v.index - 1);
    return eval_at(jets.value(v), x0);
  };
  std::map<JetCoordinate, double> out;
  for (const auto& c : enumerate_coordinates(cfg, order)) out[c] = evaluate(P.component(c), value);
  return out;
}

std::map<JetCoordinate, double> flow_oracle(const ProjectableField& Y, int order,
                                            const PolynomialSection& s,
                                            const std::vector<double>& x0, double h,
                                            const JetConfig& cfg) {
  Y.validate(cfg);
  if (!Y.is_affine()) throw JetError("flow_oracle supports affine fields only");
  if (static_cast<int>(x0.size()) != cfg.m) throw JetError("flow_oracle: point dimension");
  const int m = cfg.m, n = cfg.n, N = m + n;
  std::vector<JetCoordinate> vars;
  for (int i = 1; i <= m; ++i) vars.push_back(JetCoordinate::base(i));
  for (int a = 1; a <= n; ++a) vars.push_back(JetCoordinate::field(a));

  // Augmented generator of the affine flow on (x, y, 1).
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int r = 0; r < N; ++r) {
    const Expr& e = r < m ? Y.base[r] : Y.fibre[r - m];
    double c = 0.0;
    std::vector<double> row = affine_row(e, vars, c);
    for (int q = 0; q < N; ++q) G(r, q) = row[q];
    G(r, N) = c;
  }

  // σ^b_{,J}(x0) for all ordered tuples, via canonical derivatives.
  SectionJets jets(s);
  auto sigma_at = [&](int b, const std::vector<int>& tuple) {
    return eval_at(jets.derivative(b, MultiIndex::canonical(tuple, m)), x0);
  };

  auto jet_at = [&](double t) {
    Eigen::MatrixXd F = (t * G).exp();
    Eigen::MatrixXd R = F.block(0, 0, m, m);
    Eigen::MatrixXd S = F.block(m, 0, n, m);
    Eigen::MatrixXd T = F.block(m, m, n, n);
    Eigen::VectorXd xa(N + 1);
    for (int i = 0; i < m; ++i) xa(i) = x0[i];
    for (int a = 0; a < n; ++a) xa(m + a) = eval_at(s.components[a], x0);
    xa(N) = 1.0;
    Eigen::VectorXd moved = F * xa;
    Eigen::MatrixXd Rinv = R.inverse();
    Eigen::MatrixXd SR = S * Rinv;

    std::map<JetCoordinate, double> vals;
    for (int i = 1; i <= m; ++i) vals[JetCoordinate::base(i)] = moved(i - 1);
    for (int a = 1; a <= n; ++a) vals[JetCoordinate::field(a)] = moved(m + a - 1);
    for (int l = 1; l <= order; ++l) {
      for (const MultiIndex& I : enumerate_multi_indices(m, l)) {
        for (int a = 1; a <= n; ++a) {
          double v = l == 1 ? SR(a - 1, I[0] - 1) : 0.0;
          // Σ_{j1..jl} Π Rinv(j_r, i_r) Σ_b T(a,b) σ^b_{,j1..jl}
          std::vector<int> tuple(l, 1);
          while (true) {
            double w = 1.0;
            for (int r = 0; r < l; ++r) w *= Rinv(tuple[r] - 1, I[r] - 1);
            if (w != 0.0)
              for (int b = 1; b <= n; ++b)
                if (T(a - 1, b - 1) != 0.0) v += w * T(a - 1, b - 1) * sigma_at(b, tuple);
            int p = l - 1;
            while (p >= 0 && tuple[p] == m) tuple[p--] = 1;
            if (p < 0) break;
            ++tuple[p];
          }
          vals[JetCoordinate::jet(a, I)] = v;
        }
      }
    }
    return vals;
  };

  auto plus = jet_at(h), minus = jet_at(-h);
  std::map<JetCoordinate, double> out;
  for (const auto& [c, v] : plus) {
    double d = (v - minus.at(c)) / (2.0 * h);
    if (!std::isfinite(d)) throw JetError("flow_oracle: non-finite derivative");
    out[c] = d;
  }
  return out;
}

SymmetryCheck is_symmetry(const ProjectableField& Y, const Expr& L, const JetConfig& cfg) {
  check_lagrangian(L, cfg);
  VectorFieldOnJet Yk = prolong(Y, cfg.k, cfg);
  DifferentialForm dlambda = exterior_derivative(L * volume_form(cfg.m));
  SymmetryCheck out;
  out.certificate = dlambda.is_zero() ? DifferentialForm(cfg.m + 1) : lie_derivative(Yk, dlambda);
  out.symmetric = out.certificate.is_zero();
  return out;
}

DifferentialForm formal_current(const ProjectableField& Y, const DeDonderForm& theta) {
  const JetConfig& cfg = theta.cfg;
  VectorFieldOnJet P = prolong(Y, cfg.working_order(), cfg);
  return horizontalize(interior_product(P, theta.theta), cfg);
}

DifferentialForm noether_current(const ProjectableField& Y, const DeDonderForm& theta,
                                 const PolynomialSection& s) {
  const JetConfig& cfg = theta.cfg;
  s.validate();
  VectorFieldOnJet P = prolong(Y, cfg.working_order(), cfg);
  return holonomic_pullback(interior_product(P, theta.theta), s);
}

}  // namespace dedonder
