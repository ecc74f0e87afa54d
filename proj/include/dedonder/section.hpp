#pragma once

#include <map>
#include <vector>

#include "dedonder/expr.hpp"

namespace dedonder {

// σ^a(x) as polynomials in the base coordinates. Coefficient symbols are
// allowed, which is how generic sections are represented.
struct PolynomialSection {
  int m = 1;
  std::vector<Expr> components;  // index a-1

  int n() const { return static_cast<int>(components.size()); }
  // Highest total degree in x over all components.
  int degree() const;
  void validate() const;  // components depend on x (and coefficient symbols) only
};

// σ^a = Σ_{|α| <= degree} c^a_α x^α / α!, with the c^a_α left symbolic.
PolynomialSection generic_section(const JetConfig& cfg, int degree);

// Default degree used for "for every section" checks.
inline int generic_degree(const JetConfig& cfg) { return 2 * cfg.k + 1; }

// Lazily computed ∂_I σ^a, memoized. Not thread-safe; use one per thread.
class SectionJets {
 public:
  explicit SectionJets(const PolynomialSection& s) : s_(s) {}
  // Value of the fibre coordinate y^a or z^a_I along σ.
  const Expr& value(const JetCoordinate& c);
  const Expr& derivative(int a, const MultiIndex& I);
  const PolynomialSection& section() const { return s_; }

 private:
  const PolynomialSection& s_;
  std::map<std::pair<int, MultiIndex>, Expr> cache_;
};

// Replaces every y^a and z^a_I by the matching derivative of σ.
Expr substitute_section(const Expr& e, const PolynomialSection& s);
Expr substitute_section(const Expr& e, SectionJets& jets);

}  // namespace dedonder
