#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dedonder/jet_core.hpp"

namespace dedonder {

struct Factor {
  JetCoordinate var;
  std::uint32_t exp = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// Sorted by var, exponents positive.
using Monomial = std::vector<Factor>;

int monomial_degree(const Monomial& m);
// Graded order: total degree, then lexicographic on (var, exp).
bool monomial_less(const Monomial& a, const Monomial& b);
Monomial monomial_product(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

class OrderOverflow : public JetError {
 public:
  using JetError::JetError;
};

// Exact rational polynomial in jet coordinates (and generic-section
// coefficient symbols). Terms are kept sorted by monomial_less, with no
// duplicate monomials and no zero coefficients, so == is mathematical equality.
class Expr {
 public:
  Expr() = default;
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Expr variable(const JetCoordinate& v, std::uint32_t exp = 1);
  static Expr x(int i) { return variable(JetCoordinate::base(i)); }
  static Expr y(int a) { return variable(JetCoordinate::field(a)); }
  static Expr z(int a, const MultiIndex& I) { return variable(JetCoordinate::jet(a, I)); }
  // Takes ownership of arbitrary terms and normalizes.
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // throws if not constant

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator*=(const Rational& c);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(Expr a, const Rational& c) { return a *= c; }
  friend Expr operator*(const Rational& c, Expr a) { return a *= c; }
  Expr operator-() const;

  friend bool operator==(const Expr& a, const Expr& b);

  Expr pow(unsigned e) const;

  // Max |I| over Jet variables; 0 if only fields appear; -1 if no fibre
  // coordinate appears at all.
  int jet_order() const;
  // Max total degree in fibre coordinates (Field and Jet).
  int fibre_degree() const;
  std::set<JetCoordinate> variables() const;
  bool depends_on(const std::function<bool(const JetCoordinate&)>& pred) const;

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

std::string rational_to_string(const Rational& q);

// Formal partial derivative, each canonical coordinate independent.
Expr partial(const Expr& e, const JetCoordinate& c);

// D_i e. Results needing jets beyond max_order throw OrderOverflow; a negative
// max_order means the working order 2k-1 of cfg.
Expr total_derivative(const Expr& e, int i, const JetConfig& cfg, int max_order = -1);

// D_{I} e = D_{i1} ... D_{il} e
Expr total_derivative(const Expr& e, const MultiIndex& I, const JetConfig& cfg,
                      int max_order = -1);

// Simultaneous substitution; lookup returns nullptr to keep a variable.
using SubstitutionFn = std::function<const Expr*(const JetCoordinate&)>;
Expr substitute(const Expr& e, const SubstitutionFn& lookup);
Expr substitute(const Expr& e, const std::map<JetCoordinate, Expr>& values);

// Numeric evaluation with a value for every variable.
using ValueFn = std::function<double(const JetCoordinate&)>;
double evaluate(const Expr& e, const ValueFn& value);

}  // namespace dedonder
