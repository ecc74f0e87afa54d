#include "dedonder/boundary.hpp"

#include <exception>
#include <sstream>

namespace dedonder {

namespace {

Wedge volume_wedge(int m) {
  Wedge w;
  for (int i = 1; i <= m; ++i) w.push_back(dx(i));
  return w;
}

std::string key_label(const char* name, int a, int i, const MultiIndex& tail) {
  std::ostringstream os;
  os << name << "[" << a << ";" << i;
  for (int v : tail) os << ' ' << v;
  os << "]";
  return os.str();
}

}  // namespace

Expr PhiDecomposition::component(int a, const MultiIndex& I) const {
  auto it = components.find(JetCoordinate::jet(a, I));
  return it == components.end() ? Expr() : it->second;
}

DifferentialForm PhiDecomposition::assemble() const {
  DifferentialForm out(cfg.m + 1);
  DifferentialForm vol = volume_form(cfg.m);
  for (const auto& [b, c] : components)
    out += c * wedge(DifferentialForm::basis(b), vol);
  return out;
}

PhiDecomposition decompose_phi(const DifferentialForm& phi, const JetConfig& cfg) {
  PhiDecomposition dec{cfg, {}};
  if (phi.is_zero()) return dec;
  if (phi.degree() != cfg.m + 1) throw JetError("decompose_phi: expected an (m+1)-form");
  const Wedge vol = volume_wedge(cfg.m);
  const bool odd = cfg.m % 2 == 1;
  for (const auto& [w, c] : phi.terms()) {
    bool shaped = std::equal(vol.begin(), vol.end(), w.begin()) && w.back().is_fibre() &&
                  w.back().order() <= cfg.k;
    if (!shaped)
      throw JetError("decompose_phi: term outside span{dy, dz_I (|I| <= k)} ^ d_m x");
    // dx^1..dx^m ^ b = (-1)^m b ^ d_m x
    dec.components[w.back()] += odd ? -c : c;
  }
  return dec;
}

void check_lagrangian(const Expr& L, const JetConfig& cfg) {
  for (const auto& v : L.variables()) {
    if (v.is_coefficient()) throw JetError("Lagrangian contains a section coefficient symbol");
    if (v.is_jet() && v.order() > cfg.k)
      throw JetError("Lagrangian has jet order " + std::to_string(v.order()) + " > k = " +
                     std::to_string(cfg.k));
    if (!v.valid_for(cfg)) throw JetError("Lagrangian variable " + v.to_string() + " out of range");
  }
}

LagrangianPhi phi_from_lagrangian(const Expr& L, const JetConfig& cfg) {
  cfg.validate();
  check_lagrangian(L, cfg);
  LagrangianPhi out{exterior_derivative(L * volume_form(cfg.m)), {cfg, {}}};
  for (const auto& c : enumerate_coordinates(cfg, cfg.k)) {
    if (!c.is_fibre()) continue;
    Expr d = partial(L, c);
    if (!d.is_zero()) out.decomposition.components.emplace(c, std::move(d));
  }
  if (decompose_phi(out.phi, cfg).components != out.decomposition.components)
    throw VerificationError("phi_from_lagrangian: d(L d_m x) disagrees with partials");
  return out;
}

std::string CoefficientKey::to_string() const { return key_label("p", a, i, tail); }

Expr BoundaryCoefficients::get(int a, int i, const MultiIndex& tail) const {
  auto it = p.find({a, i, tail});
  return it == p.end() ? Expr() : it->second;
}

void BoundaryCoefficients::set(int a, int i, const MultiIndex& tail, const Expr& v) {
  if (v.is_zero())
    p.erase({a, i, tail});
  else
    p[{a, i, tail}] = v;
}

std::vector<PerturbationViolation> check_perturbation(const SkewPerturbation& Q,
                                                      const JetConfig& cfg) {
  std::vector<PerturbationViolation> out;
  std::map<std::pair<int, MultiIndex>, std::vector<const std::pair<const CoefficientKey, Expr>*>>
      groups;
  for (const auto& entry : Q.q) {
    const CoefficientKey& key = entry.first;
    if (key.a < 1 || key.a > cfg.n || key.i < 1 || key.i > cfg.m)
      throw JetError("perturbation index out of range: " + key_label("skewQ", key.a, key.i, key.tail));
    if (key.level() > cfg.k)
      throw JetError("perturbation level " + std::to_string(key.level()) + " exceeds k");
    int bound = 2 * cfg.k - key.level();
    if (entry.second.jet_order() > bound)
      throw JetError(key_label("skewQ", key.a, key.i, key.tail) + " has jet order " +
                     std::to_string(entry.second.jet_order()) + " > " + std::to_string(bound));
    groups[{key.a, key.tail.with(key.i)}].push_back(&entry);
  }
  for (const auto& [aI, members] : groups) {
    Expr sum;
    std::string relation;
    for (const auto* e : members) {
      sum += e->second;
      if (!relation.empty()) relation += " + ";
      relation += key_label("skewQ", e->first.a, e->first.i, e->first.tail);
    }
    if (!sum.is_zero())
      out.push_back({aI.first, aI.second, sum, relation + " = 0"});
  }
  return out;
}

BoundaryCoefficients symmetric_boundary_coefficients(const PhiDecomposition& dec) {
  const JetConfig& cfg = dec.cfg;
  BoundaryCoefficients out{cfg, {}};
  for (int a = 1; a <= cfg.n; ++a) {
    std::map<MultiIndex, Expr> P;
    for (int l = 1; l <= cfg.k; ++l) {
      for (const MultiIndex& K : enumerate_multi_indices(cfg.m, l)) {
        Expr acc;
        for (int t = 0; t <= cfg.k - l; ++t) {
          for (const MultiIndex& T : enumerate_multi_indices(cfg.m, t)) {
            MultiIndex KT = K.joined(T);
            Expr phi = dec.component(a, KT);
            if (phi.is_zero()) continue;
            Expr term = total_derivative(phi, T, cfg) *
                        make_rational(T.multiplicity(), KT.multiplicity());
            if (t % 2) acc -= term;
            else acc += term;
          }
        }
        P.emplace(K, std::move(acc));
      }
    }
    for (int l = 0; l <= cfg.k - 1; ++l)
      for (const MultiIndex& J : enumerate_multi_indices(cfg.m, l))
        for (int i = 1; i <= cfg.m; ++i)
          out.set(a, i, J, P.at(J.with(i)) * Rational(J.multiplicity()));
  }
  return out;
}

BoundaryCoefficients solve_boundary_coefficients(const PhiDecomposition& dec,
                                                 const SkewPerturbation& Q) {
  const JetConfig& cfg = dec.cfg;
  auto violations = check_perturbation(Q, cfg);
  if (!violations.empty()) {
    std::string msg = "skew perturbation violates the symmetrized constraint:";
    for (const auto& v : violations) msg += " [" + v.relation + "]";
    throw JetError(msg);
  }
  BoundaryCoefficients out{cfg, {}};
  for (int l = cfg.k; l >= 1; --l) {
    for (int a = 1; a <= cfg.n; ++a) {
      for (const MultiIndex& K : enumerate_multi_indices(cfg.m, l)) {
        Expr rhs = dec.component(a, K);
        if (l < cfg.k)
          for (int i = 1; i <= cfg.m; ++i) rhs -= total_derivative(out.get(a, i, K), i, cfg);
        for (int pos = 0; pos < K.size(); ++pos) {
          if (pos > 0 && K[pos] == K[pos - 1]) continue;
          MultiIndex J = K.without(pos);
          Expr v = rhs * make_rational(J.multiplicity(), K.multiplicity());
          auto qit = Q.q.find({a, K[pos], J});
          if (qit != Q.q.end()) v += qit->second;
          out.set(a, K[pos], J, v);
        }
      }
    }
  }
  return out;
}

std::vector<ConditionCheck> check_boundary_conditions(const DifferentialForm& xi,
                                                      const JetConfig& cfg) {
  std::vector<ConditionCheck> out;
  out.push_back({"1a: semi-basic over the forgetful projection to order k-1",
                 is_semibasic(xi, Fibration::forgetful(cfg.k - 1), cfg), ""});

  ConditionCheck c1b{"1b: X ⌟ Ξ semi-basic over the source for vertical X", true, ""};
  if (xi.degree() > 0) {
    for (const auto& X : fibre_directions(cfg, Fibration::source())) {
      DifferentialForm contracted = interior_product(VectorFieldOnJet::coordinate(X), xi);
      if (!is_semibasic(contracted, Fibration::source(), cfg)) {
        c1b.passed = false;
        c1b.detail = "fails for X = d/d" + X.to_string();
        break;
      }
    }
  }
  out.push_back(c1b);

  ConditionCheck c2{"2: holonomic pullback of Ξ vanishes", true, ""};
  DifferentialForm pulled = holonomic_pullback(xi, generic_section(cfg, generic_degree(cfg)));
  if (!pulled.is_zero()) {
    c2.passed = false;
    c2.detail = pulled.to_string();
  }
  out.push_back(c2);
  return out;
}

BoundaryForm assemble_boundary_form(const BoundaryCoefficients& p,
                                    std::optional<PhiDecomposition> phi) {
  const JetConfig& cfg = p.cfg;
  cfg.validate();
  DifferentialForm xi(cfg.m);
  std::map<std::pair<int, MultiIndex>, DifferentialForm> thetas;
  for (const auto& [key, coeff] : p.p) {
    if (key.level() > cfg.k) throw JetError("boundary coefficient above level k");
    auto tk = std::make_pair(key.a, key.tail);
    auto it = thetas.find(tk);
    if (it == thetas.end())
      it = thetas.emplace(tk, contact_form(cfg, key.a, key.tail).form).first;
    xi += coeff * wedge(it->second, omega(key.i, cfg.m));
  }
  for (const auto& check : check_boundary_conditions(xi, cfg))
    if (!check.passed)
      throw VerificationError("boundary form fails condition " + check.name + ": " + check.detail);
  return BoundaryForm{cfg, xi, p, std::move(phi)};
}

bool Condition3Report::all_zero() const {
  for (const auto& e : entries)
    if (!e.residual.is_zero()) return false;
  return true;
}

std::vector<Condition3Entry> Condition3Report::failures() const {
  std::vector<Condition3Entry> out;
  for (const auto& e : entries)
    if (!e.residual.is_zero()) out.push_back(e);
  return out;
}

Condition3Report verify_condition3(const DifferentialForm& phi, const BoundaryForm& xi) {
  const JetConfig& cfg = xi.cfg;
  DifferentialForm total = exterior_derivative(xi.xi);
  total += phi;
  const PolynomialSection sigma = generic_section(cfg, generic_degree(cfg));
  std::vector<JetCoordinate> fields;
  for (const auto& c : enumerate_coordinates(cfg, cfg.working_order()))
    if (c.is_jet()) fields.push_back(c);

  Condition3Report report;
  report.entries.resize(fields.size());
  const Wedge vol = volume_wedge(cfg.m);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < static_cast<long>(fields.size()); ++idx) {
    try {
      SectionJets jets(sigma);
      DifferentialForm contracted =
          total.is_zero() ? DifferentialForm(cfg.m)
                          : interior_product(VectorFieldOnJet::coordinate(fields[idx]), total);
      DifferentialForm pulled = holonomic_pullback(contracted, jets);
      report.entries[idx] = {fields[idx], pulled.coefficient(vol)};
    } catch (...) {
#pragma omp critical(dedonder_condition3_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return report;
}

DeDonderForm dedonder_form(const Expr& L, const BoundaryForm& xi) {
  if (!xi.has_condition3())
    throw JetError("dedonder_form: Ξ was not constructed as a boundary form of dΛ");
  const JetConfig& cfg = xi.cfg;
  check_lagrangian(L, cfg);
  DifferentialForm lambda = L * volume_form(cfg.m);
  DifferentialForm theta = lambda + xi.xi;
  PolynomialSection sigma = generic_section(cfg, generic_degree(cfg));
  SectionJets jets(sigma);
  if (holonomic_pullback(theta, jets) != holonomic_pullback(lambda, jets))
    throw VerificationError("dedonder_form: j*Θ differs from j*Λ");
  return DeDonderForm{cfg, L, xi, theta};
}

std::vector<Expr> lagrange_derivative(const Expr& L, const JetConfig& cfg) {
  cfg.validate();
  check_lagrangian(L, cfg);
  const int ceiling = 2 * cfg.k;
  std::vector<Expr> out;
  for (int a = 1; a <= cfg.n; ++a) {
    Expr acc;
    for (int l = 0; l <= cfg.k; ++l) {
      for (const MultiIndex& I : enumerate_multi_indices(cfg.m, l)) {
        Expr d = partial(L, JetCoordinate::jet(a, I));
        if (d.is_zero()) continue;
        Expr term = total_derivative(d, I, cfg, ceiling);
        if (l % 2) acc -= term;
        else acc += term;
      }
    }
    out.push_back(std::move(acc));
  }

  // Φ_a - Σ_i D_i p^i_a with the symmetric p must reproduce δL/δy^a.
  LagrangianPhi lp = phi_from_lagrangian(L, cfg);
  BoundaryCoefficients p = symmetric_boundary_coefficients(lp.decomposition);
  for (int a = 1; a <= cfg.n; ++a) {
    Expr lhs = partial(L, JetCoordinate::field(a));
    for (int i = 1; i <= cfg.m; ++i) lhs -= total_derivative(p.get(a, i, {}), i, cfg, ceiling);
    if (lhs != out[a - 1])
      throw VerificationError("Lagrange derivative identity fails for a = " + std::to_string(a));
  }
  return out;
}

std::vector<ResidualEntry> dedonder_residual(const DeDonderForm& theta, const PolynomialSection& s) {
  const JetConfig& cfg = theta.cfg;
  s.validate();
  if (s.m != cfg.m || s.n() != cfg.n) throw JetError("section shape does not match (m, n)");
  DifferentialForm dtheta = exterior_derivative(theta.theta);
  SectionJets jets(s);
  std::vector<ResidualEntry> out;
  for (const auto& X : fibre_directions(cfg, Fibration::source())) {
    DifferentialForm contracted = dtheta.is_zero()
                                      ? DifferentialForm(cfg.m)
                                      : interior_product(VectorFieldOnJet::coordinate(X), dtheta);
    out.push_back({X, holonomic_pullback(contracted, jets)});
  }
  return out;
}

BoundaryComparison compare_boundary_forms(const BoundaryForm& xi, const BoundaryForm& xi2) {
  if (!xi.has_condition3() || !xi2.has_condition3())
    throw JetError("compare_boundary_forms: both forms must be boundary forms of a Φ");
  if (!(xi.cfg == xi2.cfg)) throw JetError("compare_boundary_forms: configurations differ");
  if (xi.phi->components != xi2.phi->components)
    throw JetError("compare_boundary_forms: forms belong to different Φ");
  const JetConfig& cfg = xi.cfg;
  BoundaryComparison out;
  for (const auto& [key, v] : xi.coefficients.p) out.q[key] += v;
  for (const auto& [key, v] : xi2.coefficients.p) out.q[key] -= v;
  std::erase_if(out.q, [](const auto& kv) { return kv.second.is_zero(); });

  for (int a = 1; a <= cfg.n; ++a) {
    Expr div;
    for (int i = 1; i <= cfg.m; ++i) {
      auto it = out.q.find({a, i, {}});
      if (it != out.q.end()) div += total_derivative(it->second, i, cfg, 2 * cfg.k);
    }
    if (!div.is_zero()) out.divergence_zero = false;
    out.divergence.push_back(std::move(div));
  }

  DifferentialForm ddiff = exterior_derivative(xi.xi - xi2.xi);
  PolynomialSection sigma = generic_section(cfg, generic_degree(cfg));
  SectionJets jets(sigma);
  if (!ddiff.is_zero()) {
    for (const auto& X : fibre_directions(cfg, Fibration::source())) {
      DifferentialForm pulled =
          holonomic_pullback(interior_product(VectorFieldOnJet::coordinate(X), ddiff), jets);
      if (!pulled.is_zero()) out.pullback_differences.emplace_back(X, std::move(pulled));
    }
  }
  return out;
}

}  // namespace dedonder
