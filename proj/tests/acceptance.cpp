// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "dedonder/commands.hpp"
#include "dedonder/numeric/verify.hpp"
#include "parser_corpus.hpp"
#include "support.hpp"

using namespace dedonder;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

ProjectableField make_field(const JetConfig& cfg, std::vector<Expr> base, std::vector<Expr> fibre) {
  ProjectableField Y = ProjectableField::zero(cfg);
  for (std::size_t i = 0; i < base.size(); ++i) Y.base[i] = base[i];
  for (std::size_t a = 0; a < fibre.size(); ++a) Y.fibre[a] = fibre[a];
  return Y;
}

BoundaryForm symmetric_xi(const LagrangianPhi& lp) {
  return assemble_boundary_form(symmetric_boundary_coefficients(lp.decomposition), lp.decomposition);
}

Outcome euler_lagrange() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_problem("fourth_order_wave.dd");
  auto el = lagrange_derivative(spec.lagrangian, spec.cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(el.size() == 2, "two equations");
  for (int a = 1; a <= 2 && el.size() == 2; ++a) {
    Expr op = z(a, {1, 1, 1, 1}, 2) - Expr(2) * z(a, {1, 1, 2, 2}, 2) + z(a, {2, 2, 2, 2}, 2);
    Expr factor(a == 1 ? 2L : -2L);
    o.require(el[a - 1] == factor * op, "E[" + std::to_string(a) + "] = " + el[a - 1].to_string());
  }
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  return o;
}

Outcome condition3() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_problem("fourth_order_wave.dd");
  auto lp = phi_from_lagrangian(spec.lagrangian, spec.cfg);
  o.require(verify_condition3(lp.phi, symmetric_xi(lp)).all_zero(), "wave problem");
  std::mt19937 rng(2024);
  int count = 0;
  for (JetConfig cfg : {make_config(1, 1, 2), make_config(2, 1, 2), make_config(2, 2, 2)})
    for (int trial = 0; trial < 4; ++trial, ++count) {
      Expr L = random_lagrangian(rng, cfg);
      auto rlp = phi_from_lagrangian(L, cfg);
      if (!verify_condition3(rlp.phi, symmetric_xi(rlp)).all_zero()) o.require(false, "random L " + L.to_string());
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(count >= 10, "fewer than 10 random Lagrangians");
  o.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  return o;
}

Outcome skew_decomposition() {
  Outcome o;
  struct Fixture {
    Expr L;
    PolynomialSection s;
    std::vector<Expr> Y;
  };
  JetConfig cfg = make_config(2, 2, 2);
  std::mt19937 rng(77);
  std::vector<Fixture> fixtures = {
      {wave_lagrangian(),
       {2, {Expr::x(1).pow(2) * Expr::x(2).pow(2) + Expr::x(2).pow(4), Expr::x(1).pow(3) * Expr::x(2)}},
       {Expr::x(1) * Expr::x(2) + Expr(1), Expr::x(2).pow(2)}},
      {wave_lagrangian(),
       {2, {(Expr::x(2) - Expr::x(1)).pow(3) + Expr::x(1).pow(4), Expr::x(1).pow(2) * Expr::x(2) - Expr::x(2).pow(4)}},
       {Expr::y(1) + Expr::x(1), Expr::y(2) * Expr::x(2)}},
      {random_lagrangian(rng, cfg),
       {2, {Expr::x(1).pow(3) - Expr::x(2), Expr::x(2).pow(2) * Expr::x(1)}},
       {Expr(1) + Expr::x(2), Expr::y(1)}},
  };
  GridSpec g = make_grid({GridDim{0, 1, 33, false}, GridDim{0.2, 1.1, 33, false}});
  SkewPerturbation Q = default_skew(cfg);
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto& fx = fixtures[f];
    auto lp = phi_from_lagrangian(fx.L, cfg);
    BoundaryForm sym = symmetric_xi(lp);
    BoundaryForm skew = assemble_boundary_form(solve_boundary_coefficients(lp.decomposition, Q), lp.decomposition);
    BoundaryComparison cmp = compare_boundary_forms(sym, skew);
    std::string tag = "fixture " + std::to_string(f + 1) + ": ";
    o.require(cmp.divergence_zero, tag + "divergence trace");
    o.require(cmp.pullbacks_zero(), tag + "pullbacks");
    auto s = sample_section(g, fx.s);
    ProjectableField Y = make_field(cfg, {}, fx.Y);
    DecompositionTerms a = decomposition_terms(lp.decomposition, sym, Y, s);
    DecompositionTerms b = decomposition_terms(lp.decomposition, skew, Y, s);
    double scale = std::max({std::abs(a.total), std::abs(a.body), std::abs(a.boundary)});
    o.require(std::abs(a.body - b.body) <= 1e-8 * scale, tag + "body terms differ");
    o.require(std::abs(a.boundary - b.boundary) <= 1e-8 * scale, tag + "boundary terms differ");
    o.require(std::abs(a.total - a.body - a.boundary) <= 1e-8 * scale, tag + "decomposition identity");
    o.require(scale > 1e-6, tag + "trivial fixture");
  }
  return o;
}

Outcome poincare_cartan() {
  Outcome o;
  for (JetConfig cfg : {make_config(1, 1, 1), make_config(2, 2, 1), make_config(3, 1, 1)}) {
    Expr L;
    for (int a = 1; a <= cfg.n; ++a)
      for (int i = 1; i <= cfg.m; ++i)
        L += Expr(make_rational(1, 2)) * Expr::z(a, MultiIndex::canonical({i}, cfg.m)).pow(2);
    auto lp = phi_from_lagrangian(L, cfg);
    DeDonderForm th = dedonder_form(L, symmetric_xi(lp));
    DifferentialForm pc = L * volume_form(cfg.m);
    for (int a = 1; a <= cfg.n; ++a)
      for (int i = 1; i <= cfg.m; ++i) {
        DifferentialForm theta = DifferentialForm::basis(dy(a));
        for (int j = 1; j <= cfg.m; ++j)
          theta -= Expr::z(a, MultiIndex::canonical({j}, cfg.m)) * DifferentialForm::basis(dx(j));
        pc += partial(L, JetCoordinate::jet(a, MultiIndex::canonical({i}, cfg.m))) * wedge(theta, omega(i, cfg.m));
      }
    o.require(th.theta == pc, "Theta differs from Poincare-Cartan for m=" + std::to_string(cfg.m));
  }
  // δL/δy = -y'' against the oracle on y = sin x, N = 512
  JetConfig cfg = make_config(1, 1, 1);
  Expr L = Expr(make_rational(1, 2)) * z(1, {1}, 1).pow(2);
  Expr E = lagrange_derivative(L, cfg)[0];
  GridSpec g = make_grid({GridDim{0, 2 * kPi, 512, true}});
  auto s = sample_section(g, std::vector<PointFn>{[](const std::vector<double>& x) { return std::sin(x[0]); }});
  for (int c : {37, 170, 400}) {
    double x = g.coordinate(0, c);
    double exact = evaluate(E, [&](const JetCoordinate& v) {
      if (v.is_base()) return x;
      return v.order() == 0 ? std::sin(x) : v.order() == 1 ? std::cos(x) : -std::sin(x);
    });
    double oracle = functional_derivative_oracle(L, s, 1, {c}, 1e-3, cfg, 4);
    o.require(std::abs(oracle - exact) <= 1e-3, "oracle error " + std::to_string(std::abs(oracle - exact)));
  }
  return o;
}

Outcome prolongation() {
  Outcome o;
  struct Fixture {
    JetConfig cfg;
    ProjectableField Y;
    PolynomialSection s;
    std::vector<double> x0;
  };
  JetConfig c11 = make_config(1, 1, 2), c21 = make_config(2, 1, 2), c22 = make_config(2, 2, 2);
  std::vector<Fixture> fixtures = {
      {c11, make_field(c11, {}, {Expr(3) * Expr::y(1) - Expr::x(1) + Expr(2)}), {1, {Expr::x(1).pow(4) - Expr::x(1)}}, {0.7}},
      {c11, make_field(c11, {Expr::x(1)}, {Expr(2) * Expr::y(1) + Expr::x(1)}), {1, {Expr::x(1).pow(3)}}, {0.4}},
      {c21, make_field(c21, {Expr::x(2), Expr::x(1)}, {}),
       {2, {Expr::x(1).pow(2) * Expr::x(2) + Expr::x(2).pow(3)}}, {0.3, -0.5}},
      {c21, make_field(c21, {Expr(1) + Expr::x(2), Expr(2) * Expr::x(1)}, {Expr::y(1) - Expr::x(2)}),
       {2, {Expr::x(1) * Expr::x(2).pow(2) + Expr::x(1).pow(4)}}, {0.2, 0.6}},
      {c22, make_field(c22, {Expr::x(2), Expr::x(1)}, {Expr::y(2), -Expr::y(1)}),
       {2, {Expr::x(1).pow(3) * Expr::x(2), Expr::x(2).pow(2) - Expr::x(1)}}, {0.1, 0.4}},
  };
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto& fx = fixtures[f];
    auto oracle = flow_oracle(fx.Y, 3, fx.s, fx.x0, 1e-4, fx.cfg);
    auto exact = prolongation_along(fx.Y, 3, fx.s, fx.x0, fx.cfg);
    for (const auto& [c, v] : exact)
      if (std::abs(oracle.at(c) - v) > 1e-6 * std::max(1.0, std::abs(v)))
        o.require(false, "fixture " + std::to_string(f + 1) + " " + c.to_string());
  }
  for (const auto& fx : fixtures) {
    PolynomialSection gen = generic_section(fx.cfg, generic_degree(fx.cfg) + 1);
    for (int order = 1; order <= 3; ++order) {
      VectorFieldOnJet P = prolong(fx.Y, order, fx.cfg);
      for (const auto& c : contact_forms(fx.cfg, order))
        if (!holonomic_pullback(lie_derivative(P, c.form), gen).is_zero())
          o.require(false, "contact preservation at order " + std::to_string(order));
    }
  }
  return o;
}

Outcome contact_ideal() {
  Outcome o;
  for (JetConfig cfg : {make_config(1, 1, 2), make_config(2, 1, 2), make_config(2, 2, 2)}) {
    PolynomialSection s = generic_section(cfg, generic_degree(cfg));
    for (const auto& c : contact_forms(cfg, cfg.working_order()))
      if (!holonomic_pullback(c.form, s).is_zero()) o.require(false, "nonzero pullback");
  }
  return o;
}

Outcome conservation() {
  Outcome o;
  JetConfig cfg = make_config(2, 2, 2);
  Expr L = wave_lagrangian();
  auto lp = phi_from_lagrangian(L, cfg);
  DeDonderForm sym = dedonder_form(L, symmetric_xi(lp));
  DeDonderForm skew = dedonder_form(
      L, assemble_boundary_form(solve_boundary_coefficients(lp.decomposition, default_skew(cfg)), lp.decomposition));
  CauchyState st = random_cauchy_data(GridDim{0, 2 * kPi, 256, true}, 2, 0.0, 20240611);
  double e0 = energy_integral(st, sym), drift = 0.0, split = 0.0;
  for (int step = 0; step <= 20; ++step) {
    CauchyState s = cauchy_evolve(st, step / 20.0);
    double es = energy_integral(s, sym), ek = energy_integral(s, skew);
    drift = std::max(drift, rel(es, e0));
    split = std::max(split, rel(es, ek));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "drift %.3e, split %.3e", drift, split);
  o.require(std::abs(e0) > 1e-8, "degenerate energy");
  o.require(drift <= 1e-6 && split <= 1e-10, buf);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome cauchy_exactness() {
  Outcome o;
  GridDim space{0, 2 * kPi, 256, true};
  CauchyState st = make_cauchy_state(space, 0.0, {{[](double x) { return std::sin(x); },
                                                   [](double x) { return -std::cos(x); },
                                                   [](double x) { return -std::sin(x); },
                                                   [](double x) { return std::cos(x); }}});
  CauchyState out = cauchy_evolve(st, 1.0);
  double h = (space.hi - space.lo) / space.n, sq = 0.0;
  for (int j = 0; j < space.n; ++j) {
    double d = out.fields[0][0][j] - std::sin(out.coordinate(j) - 1.0);
    sq += d * d * h;
  }
  double err = std::sqrt(sq);
  char buf[64];
  std::snprintf(buf, sizeof buf, "L2 error %.3e", err);
  o.require(err <= 1e-8, buf);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome parser() {
  Outcome o;
  const auto& corpus = malformed_corpus();
  o.require(corpus.size() >= 20, "corpus too small");
  for (const auto& c : corpus) {
    try {
      parse_problem(c.text);
      o.require(false, std::string(c.name) + ": accepted");
    } catch (const ParseError& e) {
      if (e.line() != c.line || e.column() != c.column || std::string(e.what()).find(c.needle) == std::string::npos)
        o.require(false, std::string(c.name) + ": " + e.what());
    }
  }
  std::vector<std::string> texts(valid_inline_corpus().begin(), valid_inline_corpus().end());
  for (const auto& entry : std::filesystem::directory_iterator(std::string(DEDONDER_SOURCE_DIR) + "/problems"))
    if (entry.path().extension() == ".dd") texts.push_back(read_file(entry.path().string()));
  for (const auto& t : texts) {
    ProblemSpec a = parse_problem(t);
    if (!(parse_problem(render_problem(a)) == a)) o.require(false, "round trip failed");
  }
  return o;
}

}  // namespace

int main() {
  configure_logging("off");
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Euler-Lagrange reproduction", euler_lagrange},
      {"condition 3 symbolic zero", condition3},
      {"skew perturbation and decomposition terms", skew_decomposition},
      {"k = 1 reduction", poincare_cartan},
      {"prolongation correctness", prolongation},
      {"contact ideal", contact_ideal},
      {"conservation", conservation},
      {"Cauchy solver exactness", cauchy_exactness},
      {"parser corpus", parser},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %zu %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
