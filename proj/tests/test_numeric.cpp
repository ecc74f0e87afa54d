#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dedonder/commands.hpp"
#include "dedonder/numeric/verify.hpp"
#include "support.hpp"

using namespace dedonder;
using testing_support::wave_lagrangian;
using testing_support::z;

namespace {

constexpr double kPi = std::numbers::pi;

GridDim periodic(int n) { return GridDim{0.0, 2 * kPi, n, true}; }

double sup_error(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

DeDonderForm wave_theta(bool skew) {
  JetConfig cfg = make_config(2, 2, 2);
  Expr L = wave_lagrangian();
  auto lp = phi_from_lagrangian(L, cfg);
  BoundaryCoefficients p = skew ? solve_boundary_coefficients(lp.decomposition, default_skew(cfg))
                                : symmetric_boundary_coefficients(lp.decomposition);
  return dedonder_form(L, assemble_boundary_form(p, lp.decomposition));
}

ProjectableField vertical(const JetConfig& cfg, std::vector<Expr> fibre) {
  ProjectableField Y = ProjectableField::zero(cfg);
  for (std::size_t a = 0; a < fibre.size(); ++a) Y.fibre[a] = fibre[a];
  return Y;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(make_grid({GridDim{0, 1, 8, false}}));
  CHECK_THROWS_AS(make_grid({GridDim{0, 1, 4, false}}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({GridDim{1, 1, 16, false}}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({}), std::invalid_argument);
  GridSpec g = make_grid({GridDim{0, 1, 11, false}, periodic(8)});
  CHECK(g.size() == 88);
  CHECK(g.coordinate(0, 10) == doctest::Approx(1.0));
  CHECK(g.coordinate(1, 4) == doctest::Approx(kPi));
  CHECK(g.flatten(g.unflatten(37)) == 37);
  CHECK(g.stride(0) == 8);
}

TEST_CASE("numeric jets") {
  JetConfig cfg = make_config(1, 1, 2);
  GridSpec g = make_grid({periodic(256)});
  auto s = sample_section(g, std::vector<PointFn>{[](const std::vector<double>& x) { return std::sin(x[0]); }});
  auto jets = numeric_jet(s, 2, cfg);
  std::vector<double> expected(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) expected[p] = -std::sin(g.coordinate(0, static_cast<int>(p)));
  CHECK(sup_error(jets.at(JetCoordinate::jet(1, MultiIndex::canonical({1, 1}, 1))), expected) <= 1e-10);

  auto c = sample_section(g, std::vector<PointFn>{[](const std::vector<double>&) { return 3.0; }});
  auto cj = numeric_jet(c, 1, cfg);
  for (double v : cj.at(JetCoordinate::jet(1, MultiIndex::canonical({1}, 1)))) CHECK(std::abs(v) <= 1e-12);

  GridSpec open = make_grid({GridDim{-1, 2, 20, false}});
  auto lin = sample_section(open, PolynomialSection{1, {Expr::x(1)}});
  auto lj = numeric_jet(lin, 2, cfg);
  for (double v : lj.at(JetCoordinate::jet(1, MultiIndex::canonical({1}, 1)))) CHECK(v == doctest::Approx(1.0));
  for (double v : lj.at(JetCoordinate::jet(1, MultiIndex::canonical({1, 1}, 1)))) CHECK(std::abs(v) <= 1e-10);

  // open FD is exact on quartics, including near the ends
  auto q = sample_section(open, PolynomialSection{1, {Expr::x(1).pow(4)}});
  auto qj = numeric_jet(q, 1, cfg);
  const auto& d1 = qj.at(JetCoordinate::jet(1, MultiIndex::canonical({1}, 1)));
  for (int j = 0; j < 20; ++j) CHECK(d1[j] == doctest::Approx(4 * std::pow(open.coordinate(0, j), 3)).epsilon(1e-9));
}

TEST_CASE("Gregory corrections") {
  auto g2 = gregory_corrections(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == make_rational(-1, 12));
  CHECK(g2[1] == make_rational(1, 12));
  CHECK(gregory_order(8) == 4);
  CHECK(gregory_order(64) == 10);
  for (int n : {9, 17, 40}) {
    GridSpec g = make_grid({GridDim{0.5, 2.0, n, false}});
    int r = gregory_order(n);
    for (int deg = 0; deg < r; ++deg) {
      std::vector<double> v(g.size());
      for (int j = 0; j < n; ++j) v[j] = std::pow(g.coordinate(0, j), deg);
      double exact = (std::pow(2.0, deg + 1) - std::pow(0.5, deg + 1)) / (deg + 1);
      CHECK(integrate(g, v) == doctest::Approx(exact).epsilon(1e-11));
    }
  }
  GridSpec p = make_grid({periodic(32)});
  std::vector<double> v(32);
  for (int j = 0; j < 32; ++j) v[j] = std::cos(3 * p.coordinate(0, j)) + 1.0;
  CHECK(integrate(p, v) == doctest::Approx(2 * kPi).epsilon(1e-13));
}

TEST_CASE("action integral") {
  JetConfig cfg = make_config(2, 2, 2);
  GridSpec g = make_grid({GridDim{0, 1, 17, false}, GridDim{-1, 1, 17, false}});
  auto s = sample_section(g, PolynomialSection{2, {Expr::x(1), Expr::x(2)}});
  CHECK(integrate_action(Expr(), s, cfg) == 0.0);
  CHECK(integrate_action(Expr(1), s, cfg) == doctest::Approx(2.0).epsilon(1e-13));

  GridSpec torus = make_grid({periodic(64), periodic(64)});
  auto w = sample_section(torus, std::vector<PointFn>{
                                     [](const std::vector<double>& x) { return std::sin(2 * x[0]) * std::sin(x[1]); },
                                     [](const std::vector<double>&) { return 0.0; }});
  CHECK(integrate_action(wave_lagrangian(), w, cfg) == doctest::Approx(9 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("decomposition identity on open boxes") {
  JetConfig cfg = make_config(2, 2, 2);
  auto lp = phi_from_lagrangian(wave_lagrangian(), cfg);
  BoundaryForm xi = assemble_boundary_form(symmetric_boundary_coefficients(lp.decomposition), lp.decomposition);
  GridSpec g = make_grid({GridDim{0, 1, 33, false}, GridDim{0.2, 1.1, 33, false}});
  auto s = sample_section(g, PolynomialSection{2, {Expr::x(1).pow(2) * Expr::x(2).pow(2) + Expr::x(2).pow(4),
                                                    Expr::x(1).pow(3) * Expr::x(2) - Expr::x(1)}});
  ProjectableField Y = vertical(cfg, {Expr::x(1) * Expr::x(2) + Expr(1), Expr::x(2).pow(2)});
  DecompositionTerms t = decomposition_terms(lp.decomposition, xi, Y, s);
  CHECK(std::abs(t.total) > 1e-3);
  CHECK(std::abs(t.total - t.body - t.boundary) <= 1e-8 * std::abs(t.total));

  DecompositionTerms zero = decomposition_terms(lp.decomposition, xi, vertical(cfg, {}), s);
  CHECK(zero.total == 0.0);
  CHECK(zero.body == 0.0);
  CHECK(zero.boundary == 0.0);

  ProjectableField moving = ProjectableField::zero(cfg);
  moving.base[0] = Expr(1);
  CHECK_THROWS_AS(decomposition_terms(lp.decomposition, xi, moving, s), std::invalid_argument);
}

TEST_CASE("functional-derivative oracle") {
  // L = z^2/2: δL/δy = -y'' = sin x for y = sin x
  JetConfig cfg = make_config(1, 1, 1);
  Expr L = Expr(make_rational(1, 2)) * z(1, {1}, 1).pow(2);
  double prev = 1.0;
  for (int n : {128, 256, 512}) {
    GridSpec g = make_grid({periodic(n)});
    auto s = sample_section(g, std::vector<PointFn>{[](const std::vector<double>& x) { return std::sin(x[0]); }});
    int c = n / 3;
    double err = std::abs(functional_derivative_oracle(L, s, 1, {c}, 1e-3, cfg, 4) - std::sin(g.coordinate(0, c)));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-3);

  JetConfig c2 = make_config(2, 2, 2);
  GridSpec g = make_grid({GridDim{-1, 1, 48, false}, GridDim{-1, 1, 48, false}});
  auto probe = sample_section(g, std::vector<PointFn>{[](const std::vector<double>& x) { return x[0] * x[0] * x[1] * x[1]; },
                                                      [](const std::vector<double>&) { return 0.0; }});
  CHECK(functional_derivative_oracle(wave_lagrangian(), probe, 1, {24, 24}, 1e-3, c2, 4) ==
        doctest::Approx(-16.0).epsilon(1e-6));
  CHECK_THROWS(functional_derivative_oracle(wave_lagrangian(), probe, 1, {2, 24}, 1e-3, c2, 4));
}

TEST_CASE("Cauchy evolution") {
  GridDim space = periodic(256);
  CauchyState zero = make_cauchy_state(space, 0.0, {{[](double) { return 0.0; }, [](double) { return 0.0; },
                                                     [](double) { return 0.0; }, [](double) { return 0.0; }}});
  CauchyState z1 = cauchy_evolve(zero, 1.0);
  for (const auto& f : z1.fields[0])
    for (double v : f) CHECK(v == 0.0);

  CauchyState wave = make_cauchy_state(space, 0.0, {{[](double x) { return std::sin(x); },
                                                     [](double x) { return -std::cos(x); },
                                                     [](double x) { return -std::sin(x); },
                                                     [](double x) { return std::cos(x); }}});
  CauchyState out = cauchy_evolve(wave, 1.0);
  CHECK(out.t == 1.0);
  double err = 0.0;
  for (int j = 0; j < space.n; ++j) err = std::max(err, std::abs(out.fields[0][0][j] - std::sin(out.coordinate(j) - 1.0)));
  CHECK(err <= 1e-12);

  // ξ = 0: y = 1 + 2t + 3t^2 + 4t^3
  CauchyState cubic = make_cauchy_state(space, 0.0, {{[](double) { return 1.0; }, [](double) { return 2.0; },
                                                      [](double) { return 6.0; }, [](double) { return 24.0; }}});
  CauchyState c1 = cauchy_evolve(cubic, 1.0);
  for (double v : c1.fields[0][0]) CHECK(v == doctest::Approx(10.0).epsilon(1e-12));
  for (double v : c1.fields[0][3]) CHECK(v == doctest::Approx(24.0).epsilon(1e-12));

  CauchyState r = random_cauchy_data(space, 2, 0.0, 5);
  CauchyState a = cauchy_evolve(r, 0.7), b = cauchy_evolve_serial(r, 0.7);
  CHECK(a.fields == b.fields);

  CHECK_THROWS(make_cauchy_state(GridDim{0, 1, 16, false}, 0.0, {}));
}

TEST_CASE("energy integral") {
  GridDim space = periodic(256);
  DeDonderForm sym = wave_theta(false), skew = wave_theta(true);
  CauchyState zero = make_cauchy_state(space, 0.0, {{[](double) { return 0.0; }, [](double) { return 0.0; },
                                                     [](double) { return 0.0; }, [](double) { return 0.0; }},
                                                    {[](double) { return 0.0; }, [](double) { return 0.0; },
                                                     [](double) { return 0.0; }, [](double) { return 0.0; }}});
  CHECK(energy_integral(zero, sym) == 0.0);

  CauchyState st = random_cauchy_data(space, 2, 0.0, 17);
  double e0 = energy_integral(st, sym);
  CHECK(std::abs(e0) > 1e-6);
  for (double t : {0.25, 0.5, 1.0}) {
    CauchyState s = cauchy_evolve(st, t);
    double es = energy_integral(s, sym), ek = energy_integral(s, skew);
    CHECK(std::abs(es - e0) <= 1e-6 * std::abs(e0));
    CHECK(std::abs(es - ek) <= 1e-10 * std::abs(es));
  }
}
