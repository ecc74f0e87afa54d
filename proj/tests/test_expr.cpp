#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dedonder/section.hpp"
#include "support.hpp"

using namespace dedonder;
using testing_support::z;

namespace {

Expr random_expr(std::mt19937& rng, const JetConfig& cfg, int max_order, int terms) {
  std::vector<JetCoordinate> vars;
  for (int i = 1; i <= cfg.m; ++i) vars.push_back(JetCoordinate::base(i));
  for (const auto& c : enumerate_coordinates(cfg, max_order))
    if (c.is_fibre()) vars.push_back(c);
  Expr e;
  for (int t = 0; t < terms; ++t) {
    Expr term(static_cast<long>(static_cast<int>(rng() % 7) - 3));
    int f = static_cast<int>(rng() % 3);
    for (int j = 0; j < f; ++j) term *= Expr::variable(vars[rng() % vars.size()]);
    e += term;
  }
  return e;
}

PolynomialSection random_section(std::mt19937& rng, const JetConfig& cfg, int degree) {
  PolynomialSection s;
  s.m = cfg.m;
  for (int a = 1; a <= cfg.n; ++a) {
    Expr c;
    for (int l = 0; l <= degree; ++l)
      for (const auto& alpha : enumerate_multi_indices(cfg.m, l)) {
        Expr mono(static_cast<long>(static_cast<int>(rng() % 5) - 2));
        for (int i : alpha) mono *= Expr::x(i);
        c += mono;
      }
    s.components.push_back(c);
  }
  return s;
}

}  // namespace

TEST_CASE("canonical rendering") {
  Expr e = Expr(2) * z(1, {1, 1, 1, 1}, 2) - Expr(4) * z(1, {2, 1, 1, 2}, 2) + Expr(make_rational(1, 2));
  CHECK(e.to_string() == "1/2 + 2*z[1;1 1 1 1] - 4*z[1;1 1 2 2]");
  CHECK(Expr().to_string() == "0");
  CHECK((Expr::x(1) * Expr::y(1) * Expr::y(1)).to_string() == "x[1]*y[1]^2");
  CHECK((-Expr::y(2)).to_string() == "-y[2]");
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  JetConfig cfg = make_config(2, 2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Expr a = random_expr(rng, cfg, 2, 4), b = random_expr(rng, cfg, 2, 4), c = random_expr(rng, cfg, 2, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a.pow(2) == a * a);
  }
}

TEST_CASE("partial derivative") {
  Expr e = Expr::y(1).pow(3) * z(1, {1}, 1) + Expr::x(1);
  CHECK(partial(e, JetCoordinate::field(1)) == Expr(3) * Expr::y(1).pow(2) * z(1, {1}, 1));
  CHECK(partial(e, JetCoordinate::base(1)) == Expr(1));
  CHECK(partial(e, JetCoordinate::field(2)).is_zero());
}

TEST_CASE("total derivative agrees with differentiating along a section") {
  std::mt19937 rng(5);
  for (JetConfig cfg : {make_config(1, 1, 2), make_config(2, 1, 2), make_config(2, 2, 2)}) {
    for (int trial = 0; trial < 20; ++trial) {
      Expr e = random_expr(rng, cfg, 2, 5);
      PolynomialSection s = random_section(rng, cfg, 5);
      for (int i = 1; i <= cfg.m; ++i) {
        Expr lhs = substitute_section(total_derivative(e, i, cfg), s);
        Expr rhs = partial(substitute_section(e, s), JetCoordinate::base(i));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("total derivatives commute") {
  JetConfig cfg = make_config(2, 1, 2);
  Expr e = Expr::x(1) * z(1, {1}, 2) * z(1, {2}, 2) + Expr::y(1).pow(2);
  CHECK(total_derivative(total_derivative(e, 1, cfg), 2, cfg) ==
        total_derivative(total_derivative(e, 2, cfg), 1, cfg));
  CHECK(total_derivative(e, MultiIndex::canonical({2, 1}, 2), cfg) ==
        total_derivative(total_derivative(e, 1, cfg), 2, cfg));
}

TEST_CASE("order ceiling") {
  JetConfig cfg = make_config(1, 1, 2);  // working order 3
  Expr e = z(1, {1, 1, 1}, 1);
  CHECK_THROWS_AS(total_derivative(e, 1, cfg), OrderOverflow);
  CHECK(total_derivative(e, 1, cfg, 4) == z(1, {1, 1, 1, 1}, 1));
  CHECK(e.jet_order() == 3);
  CHECK(Expr::x(1).jet_order() == -1);
  CHECK(Expr::y(1).jet_order() == 0);
}

TEST_CASE("substitute and evaluate") {
  Expr e = Expr::x(1) * Expr::y(1) + Expr(2);
  std::map<JetCoordinate, Expr> sub{{JetCoordinate::field(1), Expr::x(1) + Expr(1)}};
  CHECK(substitute(e, sub) == Expr::x(1).pow(2) + Expr::x(1) + Expr(2));
  double v = evaluate(e, [](const JetCoordinate& c) { return c.is_base() ? 3.0 : 0.5; });
  CHECK(v == doctest::Approx(3.5));
  CHECK(Expr(make_rational(3, 4)).constant_value() == make_rational(3, 4));
  CHECK_THROWS_AS(Expr::y(1).constant_value(), JetError);
}

TEST_CASE("generic section derivatives pick out coefficients") {
  JetConfig cfg = make_config(2, 1, 1);
  PolynomialSection s = generic_section(cfg, generic_degree(cfg));
  SectionJets jets(s);
  auto I = MultiIndex::canonical({1, 2}, 2);
  Expr d = jets.derivative(1, I);
  // At x = 0 only c[1;1 2] survives.
  std::map<JetCoordinate, Expr> origin{{JetCoordinate::base(1), Expr()}, {JetCoordinate::base(2), Expr()}};
  CHECK(substitute(d, origin) == Expr::variable(JetCoordinate::coefficient(1, I)));
}
